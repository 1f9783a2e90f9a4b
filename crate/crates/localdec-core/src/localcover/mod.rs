//! The `r`-local cover: exact when the deck group is proven finite,
//! otherwise a ball around the base lift built over a partial coset table.

mod cayley;
mod truncated;

pub use cayley::{cayley_graph, covering_equivalence, gamma_r_cover, local_group_extension, LabelledGraph};
pub use truncated::{Certificates, TruncatedCover};

use crate::error::{Error, Result};
use crate::grouppres::{deck_group_presentation, todd_coxeter, ChordAlphabet, Enumeration, FiniteGroup, Letter};
use crate::multigraph::iso::{isomorphic, IsoOutcome, DEFAULT_BUDGET};
use crate::multigraph::{short_cycles_span, Edge, Multigraph, OrientedEdge, Vertex, Walk, UNREACHABLE};
use crate::Verdict;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// A finite covering map onto `base`.
///
/// When `deck` is present the cover is a derived graph: vertex `(v, g)`
/// has index `g·|V| + v` and edge `(e, g)` index `g·|E| + e`, joining
/// `(u, g)` to `(w, g·ν(e))` for `e = uw`, and the deck group acts by
/// left multiplication on the second coordinate.
#[derive(Clone, Debug)]
pub struct Covering {
    pub base: Multigraph,
    pub cover: Multigraph,
    pub vertex_proj: Vec<Vertex>,
    pub edge_proj: Vec<Edge>,
    /// Whether the forward traversal of a cover edge maps to the forward
    /// traversal of its image.
    pub edge_forward: Vec<bool>,
    pub base_point: Vertex,
    pub lift_point: Vertex,
    pub deck: Option<FiniteGroup>,
}

/// A cover edge traversal seen from its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dart {
    pub base: OrientedEdge,
    pub step: OrientedEdge,
    pub head: Vertex,
}

/// Darts leaving `x` in a graph with an edge projection.
pub(crate) fn darts_at(
    cover: &Multigraph,
    edge_proj: &[Edge],
    edge_forward: &[bool],
    x: Vertex,
) -> Vec<Dart> {
    let mut out = Vec::new();
    for &f in cover.incident(x) {
        let e = edge_proj[f];
        if cover.is_loop(f) {
            for forward in [true, false] {
                out.push(Dart {
                    base: OrientedEdge::new(e, forward == edge_forward[f]),
                    step: OrientedEdge::new(f, forward),
                    head: x,
                });
            }
        } else {
            let step = OrientedEdge::leaving(cover, f, x);
            out.push(Dart {
                base: OrientedEdge::new(e, step.forward == edge_forward[f]),
                step,
                head: cover.other_end(f, x),
            });
        }
    }
    out.sort();
    out
}

fn base_darts_at(g: &Multigraph, v: Vertex) -> Vec<OrientedEdge> {
    let mut out = Vec::new();
    for &e in g.incident(v) {
        if g.is_loop(e) {
            out.push(OrientedEdge::new(e, true));
            out.push(OrientedEdge::new(e, false));
        } else {
            out.push(OrientedEdge::leaving(g, e, v));
        }
    }
    out.sort();
    out
}

/// Star bijection at every listed vertex.
pub fn covering_condition_holds(
    base: &Multigraph,
    cover: &Multigraph,
    vertex_proj: &[Vertex],
    edge_proj: &[Edge],
    edge_forward: &[bool],
    vertices: impl Iterator<Item = Vertex>,
) -> bool {
    vertices.into_iter().all(|x| {
        let mut got: Vec<OrientedEdge> =
            darts_at(cover, edge_proj, edge_forward, x).iter().map(|d| d.base).collect();
        got.sort();
        let ok_heads = darts_at(cover, edge_proj, edge_forward, x)
            .iter()
            .all(|d| vertex_proj[d.head] == d.base.head(base));
        ok_heads && got == base_darts_at(base, vertex_proj[x])
    })
}

impl Covering {
    /// Builds the derived graph of `base` for the voltage assigned by
    /// `alphabet` in `group`.
    pub fn derived(base: &Multigraph, x0: Vertex, alphabet: &ChordAlphabet, group: FiniteGroup) -> Result<Self> {
        let (n, m, k) = (base.vertex_count(), base.edge_count(), group.order());
        let voltage: Vec<Option<Letter>> = base.edges().map(|e| alphabet.letter(OrientedEdge::new(e, true))).collect();
        let mut names = Vec::with_capacity(n * k);
        for g in 0..k {
            for v in base.vertices() {
                names.push(if k == 1 { base.vertex_name(v).into() } else { format!("{}@{}", base.vertex_name(v), g) });
            }
        }
        let mut edges = Vec::with_capacity(m * k);
        let mut edge_forward = Vec::with_capacity(m * k);
        for g in 0..k {
            for e in base.edges() {
                let (u, w) = base.ends(e);
                let h = voltage[e].map_or(g, |l| group.mul_letter(g, l));
                let (a, b) = (g * n + u, h * n + w);
                let name = if k == 1 { base.edge_name(e).into() } else { format!("{}@{}", base.edge_name(e), g) };
                edges.push((name, a, b));
                edge_forward.push(a <= b);
            }
        }
        let cover = Multigraph::new(names, edges)?;
        let c = Covering {
            base: base.clone(),
            vertex_proj: (0..n * k).map(|x| x % n).collect(),
            edge_proj: (0..m * k).map(|f| f % m).collect(),
            edge_forward,
            cover,
            base_point: x0,
            lift_point: x0,
            deck: Some(group),
        };
        if !c.covering_condition() {
            return Err(Error::Postcondition("derived graph violates the covering condition".into()));
        }
        Ok(c)
    }

    pub fn sheets(&self) -> usize {
        self.cover.vertex_count() / self.base.vertex_count().max(1)
    }

    pub fn covering_condition(&self) -> bool {
        covering_condition_holds(
            &self.base,
            &self.cover,
            &self.vertex_proj,
            &self.edge_proj,
            &self.edge_forward,
            self.cover.vertices(),
        )
    }

    pub fn darts_at(&self, x: Vertex) -> Vec<Dart> {
        darts_at(&self.cover, &self.edge_proj, &self.edge_forward, x)
    }

    /// The lift over `step` leaving `x`.
    pub fn lift_step(&self, x: Vertex, step: OrientedEdge) -> Option<Dart> {
        self.darts_at(x).into_iter().find(|d| d.base == step)
    }

    /// The vertex permutation of deck element `h` on a derived cover.
    pub fn deck_vertex_map(&self, h: usize) -> Option<Vec<Vertex>> {
        let group = self.deck.as_ref()?;
        let n = self.base.vertex_count();
        Some((0..self.cover.vertex_count()).map(|x| group.mul(h, x / n) * n + x % n).collect())
    }

    pub fn deck_edge_map(&self, h: usize) -> Option<Vec<Edge>> {
        let group = self.deck.as_ref()?;
        let m = self.base.edge_count();
        Some((0..self.cover.edge_count()).map(|f| group.mul(h, f / m) * m + f % m).collect())
    }

    pub fn fibre(&self, v: Vertex) -> Vec<Vertex> {
        self.cover.vertices().filter(|&x| self.vertex_proj[x] == v).collect()
    }
}

#[derive(Clone, Debug)]
pub enum LocalCover {
    Finite(Covering),
    Truncated(TruncatedCover),
}

impl LocalCover {
    pub fn is_finite(&self) -> bool {
        matches!(self, LocalCover::Finite(_))
    }
}

/// Options for building a local cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub coset_limit: usize,
    pub truncation_radius: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { coset_limit: crate::grouppres::DEFAULT_COSET_LIMIT, truncation_radius: 10 }
    }
}

/// The `r`-local cover of a connected graph, based at vertex `0`.
pub fn local_cover(g: &Multigraph, r: usize, opts: CoverOptions) -> Result<LocalCover> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1"));
    }
    if g.vertex_count() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices"));
    }
    let x0 = 0;
    let deck = deck_group_presentation(g, r, x0)?;
    match todd_coxeter(&deck.presentation, opts.coset_limit) {
        Enumeration::Complete(t) => {
            let group = FiniteGroup::from_table(&t)?;
            Ok(LocalCover::Finite(Covering::derived(g, x0, &deck.alphabet, group)?))
        }
        Enumeration::Undecided(t) => {
            let mut tc = TruncatedCover::build(g, x0, &deck.alphabet, t, opts.truncation_radius, opts.coset_limit)?;
            tc.certify(&deck.presentation, r);
            Ok(LocalCover::Truncated(tc))
        }
    }
}

/// The unique lift of `w` starting at `start`.
pub fn lift_walk(cov: &LocalCover, w: &Walk, start: Vertex) -> Result<Walk> {
    match cov {
        LocalCover::Finite(c) => {
            w.validate(&c.base)?;
            if c.vertex_proj[start] != w.start {
                return Err(Error::InvalidParameter("start does not lie over the walk's first vertex"));
            }
            let mut cur = start;
            let mut steps = Vec::with_capacity(w.len());
            for &s in &w.steps {
                let d = c.lift_step(cur, s).ok_or(Error::Postcondition("covering condition".into()))?;
                steps.push(d.step);
                cur = d.head;
            }
            Ok(Walk { start, steps })
        }
        LocalCover::Truncated(t) => t.lift_walk(w, start),
    }
}

/// Whether any two distinct lifts of one vertex lie within distance `rho`.
pub fn verify_ball_preservation(cov: &LocalCover, rho: usize) -> Verdict {
    match cov {
        LocalCover::Finite(c) => {
            let starts: Vec<Vertex> = if c.deck.is_some() {
                // deck transitivity: one lift per base vertex suffices
                c.base.vertices().collect()
            } else {
                c.cover.vertices().collect()
            };
            let ok = starts.into_iter().all(|x| lifts_separated(&c.cover, &c.vertex_proj, x, rho));
            Verdict::from(ok)
        }
        LocalCover::Truncated(t) => t.verify_ball_preservation(rho),
    }
}

/// No other vertex over `vertex_proj[x]` within distance `rho` of `x`.
pub fn lifts_separated(cover: &Multigraph, vertex_proj: &[Vertex], x: Vertex, rho: usize) -> bool {
    let mut dist = vec![UNREACHABLE; cover.vertex_count()];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u != x && vertex_proj[u] == vertex_proj[x] {
            return false;
        }
        if dist[u] == rho {
            continue;
        }
        for &f in cover.incident(u) {
            let w = cover.other_end(f, u);
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Short cycles span the cycle space of the cover.
pub fn verify_cover_cycle_space(cov: &Covering, r: usize) -> bool {
    short_cycles_span(&cov.cover, r)
}

/// Compares `(G_{r′})_r` with `G_r` up to isomorphism.
pub fn verify_idempotence(g: &Multigraph, r: usize, r2: usize, opts: CoverOptions) -> Result<Verdict> {
    if r2 < r {
        return Err(Error::InvalidParameter("r′ must be at least r"));
    }
    let (LocalCover::Finite(big), LocalCover::Finite(small)) = (local_cover(g, r2, opts)?, local_cover(g, r, opts)?) else {
        return Ok(Verdict::Undecided);
    };
    let LocalCover::Finite(again) = local_cover(&big.cover, r, opts)? else {
        return Ok(Verdict::Undecided);
    };
    Ok(match isomorphic(&again.cover, &small.cover, DEFAULT_BUDGET) {
        IsoOutcome::Isomorphic(_) => Verdict::True,
        IsoOutcome::NotIsomorphic => Verdict::False,
        IsoOutcome::Undecided => Verdict::Undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouppres::word_image;

    pub(crate) fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges)
    }

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn finite(c: LocalCover) -> Covering {
        match c {
            LocalCover::Finite(c) => c,
            LocalCover::Truncated(_) => panic!("expected a finite cover"),
        }
    }

    #[test]
    fn k4_identity_cover() {
        let c = finite(local_cover(&k4(), 3, CoverOptions::default()).unwrap());
        assert_eq!(c.sheets(), 1);
        assert_eq!(c.cover, k4());
        assert!(verify_cover_cycle_space(&c, 3));
        assert_eq!(verify_ball_preservation(&LocalCover::Finite(c), 3), Verdict::True);
    }

    #[test]
    fn five_cycle_r5_identity() {
        let c = finite(local_cover(&cycle(5), 5, CoverOptions::default()).unwrap());
        assert_eq!(c.sheets(), 1);
    }

    #[test]
    fn closed_lift_iff_trivial_image() {
        // a double cover of a triangle with a pendant: ⟨x | x²⟩ via a
        // hand-written voltage on the 6-cycle's chord
        let g = cycle(6);
        let pres = crate::grouppres::Presentation::new(vec!["x".into()], vec![crate::grouppres::FreeWord::letter(Letter::new(0, false)).pow(2)]).unwrap();
        let t = todd_coxeter(&pres, 10).into_table();
        let group = FiniteGroup::from_table(&t).unwrap();
        let alphabet = ChordAlphabet::new(&g, crate::multigraph::spanning_tree(&g, 0).unwrap());
        let c = Covering::derived(&g, 0, &alphabet, group).unwrap();
        assert_eq!(c.cover.vertex_count(), 12);
        assert!(c.cover.is_connected());
        assert!(!verify_cover_cycle_space(&c, 6));
        let once = crate::multigraph::enumerate_short_cycles(&g, 6)[0].once_around(&g);
        let cov = LocalCover::Finite(c);
        for k in 1..4 {
            let w = Walk { start: 0, steps: once.steps.iter().cycle().take(6 * k).copied().collect() };
            let lift = lift_walk(&cov, &w, 0).unwrap();
            let LocalCover::Finite(c) = &cov else { unreachable!() };
            assert!(lift.validate(&c.cover).is_ok());
            let word = alphabet.word_of(&w);
            assert_eq!(lift.is_closed(&c.cover), word_image(&t, &word) == Some(0));
        }
    }

    #[test]
    fn deck_maps_commute_with_projection() {
        let g = cycle(3);
        let pres = crate::grouppres::Presentation::new(vec!["x".into()], vec![crate::grouppres::FreeWord::letter(Letter::new(0, false)).pow(3)]).unwrap();
        let group = FiniteGroup::from_table(todd_coxeter(&pres, 10).table()).unwrap();
        let alphabet = ChordAlphabet::new(&g, crate::multigraph::spanning_tree(&g, 0).unwrap());
        let c = Covering::derived(&g, 0, &alphabet, group).unwrap();
        for h in 0..3 {
            let vm = c.deck_vertex_map(h).unwrap();
            let em = c.deck_edge_map(h).unwrap();
            for x in c.cover.vertices() {
                assert_eq!(c.vertex_proj[vm[x]], c.vertex_proj[x]);
                assert_eq!(vm[x] == x, h == 0);
            }
            let iso = crate::multigraph::iso::Isomorphism { vertex_map: vm, edge_map: em };
            assert!(iso.is_valid(&c.cover, &c.cover));
        }
    }

    #[test]
    fn idempotence_small_cases() {
        let o = CoverOptions::default();
        assert_eq!(verify_idempotence(&k4(), 3, 3, o).unwrap(), Verdict::True);
        let octa = octahedron();
        assert_eq!(verify_idempotence(&octa, 3, 4, o).unwrap(), Verdict::True);
    }

    pub(crate) fn octahedron() -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if b != a + 3 {
                    edges.push((a, b));
                }
            }
        }
        Multigraph::from_edges(6, &edges)
    }
}
