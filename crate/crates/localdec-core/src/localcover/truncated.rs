use super::{base_darts_at, darts_at, lifts_separated};
use crate::error::{Error, Result};
use crate::grouppres::{todd_coxeter, ChordAlphabet, CosetTable, FreeWord, Presentation};
use crate::multigraph::{Edge, Multigraph, OrientedEdge, Vertex, Walk};
use crate::Verdict;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

/// What backs a truncated cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificates {
    /// Distinct lifts of each base vertex are more than `r` apart.
    pub lift_separation: Verdict,
    /// The ball is unchanged when rebuilt with twice the coset budget.
    pub budget_stable: Verdict,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.lift_separation.is_true() && self.budget_stable.is_true()
    }
}

/// The ball of radius `radius` around the lift of the base point, built
/// from a partial coset table. Vertex `(v, c)` sits over `v` on the sheet
/// of coset `c`; vertices are listed in breadth-first order.
#[derive(Clone, Debug)]
pub struct TruncatedCover {
    pub base: Multigraph,
    pub ball: Multigraph,
    pub vertex_proj: Vec<Vertex>,
    pub edge_proj: Vec<Edge>,
    pub edge_forward: Vec<bool>,
    pub coords: Vec<(Vertex, usize)>,
    pub depth: Vec<usize>,
    pub radius: usize,
    pub base_point: Vertex,
    /// Every table entry the ball needed was defined.
    pub complete: bool,
    pub certificates: Certificates,
    pub coset_limit: usize,
    pub alphabet: ChordAlphabet,
    table: CosetTable,
    index: BTreeMap<(Vertex, usize), Vertex>,
    words: BTreeMap<usize, FreeWord>,
}

impl TruncatedCover {
    pub fn build(
        g: &Multigraph,
        x0: Vertex,
        alphabet: &ChordAlphabet,
        table: CosetTable,
        radius: usize,
        coset_limit: usize,
    ) -> Result<Self> {
        let step = |c: usize, s: OrientedEdge| match alphabet.letter(s) {
            None => Some(c),
            Some(l) => table.get(c, l),
        };
        let mut complete = true;
        let mut coords = Vec::from([(x0, 0usize)]);
        let mut depth = Vec::from([0usize]);
        let mut index = BTreeMap::from([((x0, 0usize), 0usize)]);
        // words along the breadth-first tree; the table's own
        // representatives can be far too long to list on partial tables
        let mut words = BTreeMap::from([(0usize, FreeWord::empty())]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if depth[i] == radius {
                continue;
            }
            let (u, c) = coords[i];
            for s in base_darts_at(g, u) {
                let Some(d) = step(c, s) else {
                    complete = false;
                    continue;
                };
                let key = (s.head(g), d);
                if !words.contains_key(&d) {
                    let mut w = words[&c].clone();
                    w.extend(alphabet.letter(s));
                    words.insert(d, w);
                }
                if !index.contains_key(&key) {
                    index.insert(key, coords.len());
                    coords.push(key);
                    depth.push(depth[i] + 1);
                    queue.push_back(coords.len() - 1);
                }
            }
        }
        let names = coords.iter().map(|&(v, c)| format!("{}@{}", g.vertex_name(v), c)).collect();
        let mut edges = Vec::new();
        let mut edge_proj = Vec::new();
        let mut edge_forward = Vec::new();
        for (i, &(u, c)) in coords.iter().enumerate() {
            for &e in g.incident(u) {
                if g.ends(e).0 != u {
                    continue;
                }
                let Some(d) = step(c, OrientedEdge::new(e, true)) else {
                    complete = false;
                    continue;
                };
                if let Some(&j) = index.get(&(g.ends(e).1, d)) {
                    edges.push((format!("{}@{}", g.edge_name(e), c), i, j));
                    edge_proj.push(e);
                    edge_forward.push(i <= j);
                }
            }
        }
        let ball = Multigraph::new(names, edges)?;
        Ok(TruncatedCover {
            base: g.clone(),
            vertex_proj: coords.iter().map(|&(v, _)| v).collect(),
            ball,
            edge_proj,
            edge_forward,
            coords,
            depth,
            radius,
            base_point: x0,
            complete,
            certificates: Certificates { lift_separation: Verdict::Undecided, budget_stable: Verdict::Undecided },
            coset_limit,
            alphabet: alphabet.clone(),
            table,
            index,
            words,
        })
    }

    /// Fills in both certificates.
    pub fn certify(&mut self, p: &Presentation, r: usize) {
        self.certificates.lift_separation = self.verify_ball_preservation(r);
        let bigger = todd_coxeter(p, self.coset_limit.saturating_mul(2)).into_table();
        self.certificates.budget_stable =
            match TruncatedCover::build(&self.base, self.base_point, &self.alphabet, bigger, self.radius, self.coset_limit) {
                Ok(other) => Verdict::from(other.complete && self.complete && other.shape() == self.shape()),
                Err(_) => Verdict::Undecided,
            };
    }

    /// Certified at the radius it was built with.
    pub fn is_certified(&self) -> bool {
        self.complete && self.certificates.all()
    }

    fn shape(&self) -> (&[Vertex], &[usize], Vec<(Vertex, Vertex)>, &[Edge], &[bool]) {
        let ends = self.ball.edges().map(|f| self.ball.ends(f)).collect();
        (&self.vertex_proj, &self.depth, ends, &self.edge_proj, &self.edge_forward)
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn vertex_at(&self, v: Vertex, coset: usize) -> Option<Vertex> {
        self.index.get(&(v, coset)).copied()
    }

    pub fn darts_at(&self, x: Vertex) -> Vec<super::Dart> {
        darts_at(&self.ball, &self.edge_proj, &self.edge_forward, x)
    }

    /// Vertices of the ball whose star is entirely inside it.
    pub fn interior(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.ball.vertices().filter(|&x| self.depth[x] < self.radius)
    }

    pub fn lift_walk(&self, w: &Walk, start: Vertex) -> Result<Walk> {
        w.validate(&self.base)?;
        let (v, mut c) = self.coords[start];
        if v != w.start {
            return Err(Error::InvalidParameter("start does not lie over the walk's first vertex"));
        }
        let mut cur = start;
        let mut steps = Vec::with_capacity(w.len());
        for &s in &w.steps {
            if let Some(l) = self.alphabet.letter(s) {
                c = self.table.get(c, l).ok_or(Error::OutOfBall)?;
            }
            let next = self.vertex_at(s.head(&self.base), c).ok_or(Error::OutOfBall)?;
            let d = self
                .darts_at(cur)
                .into_iter()
                .find(|d| d.base == s && d.head == next)
                .ok_or(Error::OutOfBall)?;
            steps.push(d.step);
            cur = next;
        }
        Ok(Walk { start, steps })
    }

    /// Checks each base vertex at its tree lift, which is enough by deck
    /// transitivity; undecided when the `rho`-ball there leaves the
    /// truncation.
    pub fn verify_ball_preservation(&self, rho: usize) -> Verdict {
        if !self.complete {
            return Verdict::Undecided;
        }
        for v in self.base.vertices() {
            let Some(x) = self.vertex_at(v, 0) else { return Verdict::Undecided };
            if self.depth[x] + rho > self.radius {
                return Verdict::Undecided;
            }
            if !lifts_separated(&self.ball, &self.vertex_proj, x, rho) {
                return Verdict::False;
            }
        }
        Verdict::True
    }

    /// The partial deck transformation carrying the base lift to the
    /// sheet of `coset`: `(v, d) ↦ (v, coset·d)` where defined in the ball.
    pub fn deck_vertex_map(&self, coset: usize) -> Vec<Option<Vertex>> {
        self.coords
            .iter()
            .map(|&(v, d)| {
                let e = self.table.trace(coset, self.words.get(&d)?)?;
                self.vertex_at(v, e)
            })
            .collect()
    }

    /// Edge counterpart of [`Self::deck_vertex_map`].
    pub fn deck_edge_map(&self, coset: usize) -> Vec<Option<Edge>> {
        let vm = self.deck_vertex_map(coset);
        self.ball
            .edges()
            .map(|f| {
                let (a, b) = self.ball.ends(f);
                let (a2, b2) = (vm[a]?, vm[b]?);
                let e = self.edge_proj[f];
                self.ball.edges_between(a2, b2).find(|&f2| {
                    self.edge_proj[f2] == e && (self.ball.ends(f2).0 == a2) == (self.edge_forward[f2] == self.edge_forward[f])
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{local_cover, verify_ball_preservation, CoverOptions, LocalCover};
    use super::*;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges)
    }

    fn truncated(c: LocalCover) -> TruncatedCover {
        match c {
            LocalCover::Truncated(t) => t,
            LocalCover::Finite(_) => panic!("expected a truncated cover"),
        }
    }

    #[test]
    fn five_cycle_r4_is_a_line() {
        let cov = local_cover(&cycle(5), 4, CoverOptions { coset_limit: 1000, truncation_radius: 10 }).unwrap();
        assert_eq!(verify_ball_preservation(&cov, 4), Verdict::True);
        assert_eq!(verify_ball_preservation(&cov, 5), Verdict::False);
        let t = truncated(cov);
        assert_eq!(t.ball.vertex_count(), 21);
        assert_eq!(t.ball.edge_count(), 20);
        assert!(t.ball.is_connected());
        assert!(t.is_certified());
        // a path: two leaves, all else degree two
        let leaves = t.ball.vertices().filter(|&x| t.ball.degree(x) == 1).count();
        assert_eq!(leaves, 2);
    }

    #[test]
    fn lifts_of_the_cycle_are_open() {
        let g = cycle(5);
        let t = truncated(local_cover(&g, 4, CoverOptions { coset_limit: 1000, truncation_radius: 10 }).unwrap());
        let once = crate::multigraph::enumerate_short_cycles(&g, 5)[0].once_around(&g);
        let lift = t.lift_walk(&once, 0).unwrap();
        assert!(!lift.is_closed(&t.ball));
        assert!(lift.validate(&t.ball).is_ok());
        let twice = once.concat(&once).concat(&once);
        assert_eq!(t.lift_walk(&twice, 0), Err(Error::OutOfBall));
    }

    #[test]
    fn partial_deck_map_shifts_the_line() {
        let g = cycle(5);
        let t = truncated(local_cover(&g, 4, CoverOptions { coset_limit: 1000, truncation_radius: 10 }).unwrap());
        let x1 = t.ball.vertices().find(|&x| t.vertex_proj[x] == 0 && x != 0).unwrap();
        let vm = t.deck_vertex_map(t.coords[x1].1);
        assert_eq!(vm[0], Some(x1));
        let defined = vm.iter().filter(|m| m.is_some()).count();
        assert_eq!(defined, 16);
        for (x, y) in vm.iter().enumerate() {
            if let Some(y) = *y {
                assert_eq!(t.vertex_proj[y], t.vertex_proj[x]);
            }
        }
    }
}
