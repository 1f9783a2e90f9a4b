//! Isomorphism and automorphism search by colour refinement and
//! individualisation.
//!
//! The search is exact: a result is either a verified bijection, a proof
//! of absence, or `Undecided` once the node budget is spent.

use super::{Edge, Multigraph, Vertex};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

/// A pair of bijections commuting with incidence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isomorphism {
    pub vertex_map: Vec<Vertex>,
    pub edge_map: Vec<Edge>,
}

impl Isomorphism {
    pub fn identity(g: &Multigraph) -> Self {
        Isomorphism { vertex_map: g.vertices().collect(), edge_map: g.edges().collect() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isomorphism) -> Isomorphism {
        Isomorphism {
            vertex_map: other.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: other.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        }
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            vertex_map[w] = v;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (e, &f) in self.edge_map.iter().enumerate() {
            edge_map[f] = e;
        }
        Isomorphism { vertex_map, edge_map }
    }

    /// Checks the bijections and incidence against the two graphs.
    pub fn is_valid(&self, g1: &Multigraph, g2: &Multigraph) -> bool {
        if self.vertex_map.len() != g1.vertex_count()
            || self.edge_map.len() != g1.edge_count()
            || g1.vertex_count() != g2.vertex_count()
            || g1.edge_count() != g2.edge_count()
        {
            return false;
        }
        let mut hit = vec![false; g2.vertex_count()];
        for &w in &self.vertex_map {
            if w >= hit.len() || core::mem::replace(&mut hit[w], true) {
                return false;
            }
        }
        let mut hit = vec![false; g2.edge_count()];
        for &f in &self.edge_map {
            if f >= hit.len() || core::mem::replace(&mut hit[f], true) {
                return false;
            }
        }
        g1.edges().all(|e| {
            let (a, b) = g1.ends(e);
            let (x, y) = (self.vertex_map[a], self.vertex_map[b]);
            let (c, d) = g2.ends(self.edge_map[e]);
            (x == c && y == d) || (x == d && y == c)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Isomorphism),
    NotIsomorphic,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Every automorphism was visited; the count is attached.
    Complete(usize),
    /// The visitor asked to stop.
    Stopped,
    Undecided,
}

/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: usize = 2_000_000;

struct Shape {
    // (neighbour, multiplicity), ascending by neighbour; loops excluded
    nbrs: Vec<Vec<(Vertex, u32)>>,
    loops: Vec<u32>,
}

impl Shape {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut loops = vec![0; n];
        let mut nbrs: Vec<BTreeMap<Vertex, u32>> = vec![BTreeMap::new(); n];
        for e in g.edges() {
            let (a, b) = g.ends(e);
            if a == b {
                loops[a] += 1;
            } else {
                *nbrs[a].entry(b).or_default() += 1;
                *nbrs[b].entry(a).or_default() += 1;
            }
        }
        Shape { nbrs: nbrs.into_iter().map(|m| m.into_iter().collect()).collect(), loops }
    }
}

type Signature = (u32, u32, Vec<(u32, u32)>);

/// Refines both colourings together until stable. Returns false when the
/// colour class sizes of the two sides disagree.
fn refine(s1: &Shape, c1: &mut [u32], s2: &Shape, c2: &mut [u32]) -> bool {
    let mut classes = count_classes(c1, c2);
    loop {
        let sig = |s: &Shape, c: &[u32], v: Vertex| -> Signature {
            let mut around: Vec<(u32, u32)> = s.nbrs[v].iter().map(|&(w, m)| (c[w], m)).collect();
            around.sort_unstable();
            (c[v], s.loops[v], around)
        };
        let sig1: Vec<Signature> = (0..c1.len()).map(|v| sig(s1, c1, v)).collect();
        let sig2: Vec<Signature> = (0..c2.len()).map(|v| sig(s2, c2, v)).collect();
        let mut table: BTreeMap<&Signature, u32> = BTreeMap::new();
        for s in sig1.iter().chain(&sig2) {
            table.insert(s, 0);
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i as u32;
        }
        for v in 0..c1.len() {
            c1[v] = table[&sig1[v]];
        }
        for v in 0..c2.len() {
            c2[v] = table[&sig2[v]];
        }
        if !same_histogram(c1, c2) {
            return false;
        }
        let now = table.len();
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn count_classes(c1: &[u32], c2: &[u32]) -> usize {
    let mut all: Vec<u32> = c1.iter().chain(c2).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn same_histogram(c1: &[u32], c2: &[u32]) -> bool {
    let mut a = c1.to_vec();
    let mut b = c2.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

struct Search {
    s1: Shape,
    s2: Shape,
    nodes: usize,
    budget: usize,
}

enum Step {
    Continue,
    Stop,
    OutOfBudget,
}

impl Search {
    /// Depth-first over individualisations; `leaf` sees each bijection of
    /// vertices that preserves adjacency with multiplicity.
    fn run(&mut self, c1: Vec<u32>, c2: Vec<u32>, leaf: &mut dyn FnMut(&[Vertex]) -> bool) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let n = c1.len();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &c1 {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes.iter().filter(|(_, &k)| k > 1).min_by_key(|(&c, &k)| (k, c)).map(|(&c, _)| c);
        let Some(colour) = target else {
            let mut by_colour = BTreeMap::new();
            for v in 0..n {
                by_colour.insert(c2[v], v);
            }
            let map: Vec<Vertex> = c1.iter().map(|c| by_colour[c]).collect();
            if self.preserves_adjacency(&map) && !leaf(&map) {
                return Step::Stop;
            }
            return Step::Continue;
        };
        let v = (0..n).find(|&v| c1[v] == colour).unwrap();
        let fresh = c1.iter().chain(&c2).max().copied().unwrap_or(0) + 1;
        for w in (0..n).filter(|&w| c2[w] == colour) {
            let mut d1 = c1.clone();
            let mut d2 = c2.clone();
            d1[v] = fresh;
            d2[w] = fresh;
            if !refine(&self.s1, &mut d1, &self.s2, &mut d2) {
                continue;
            }
            match self.run(d1, d2, leaf) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }

    fn preserves_adjacency(&self, map: &[Vertex]) -> bool {
        (0..map.len()).all(|v| {
            let w = map[v];
            if self.s1.loops[v] != self.s2.loops[w] {
                return false;
            }
            let mut image: Vec<(Vertex, u32)> = self.s1.nbrs[v].iter().map(|&(x, m)| (map[x], m)).collect();
            image.sort_unstable();
            image == self.s2.nbrs[w]
        })
    }

}

/// Parallel classes (loops included) of two graphs, keyed by ends.
struct ParallelClasses {
    source: Vec<((Vertex, Vertex), Vec<Edge>)>,
    target: BTreeMap<(Vertex, Vertex), Vec<Edge>>,
}

impl ParallelClasses {
    fn new(g1: &Multigraph, g2: &Multigraph) -> Self {
        let mut source: BTreeMap<(Vertex, Vertex), Vec<Edge>> = BTreeMap::new();
        for e in g1.edges() {
            source.entry(g1.ends(e)).or_default().push(e);
        }
        let mut target: BTreeMap<(Vertex, Vertex), Vec<Edge>> = BTreeMap::new();
        for f in g2.edges() {
            target.entry(g2.ends(f)).or_default().push(f);
        }
        ParallelClasses { source: source.into_iter().collect(), target }
    }

    /// Each class of `g1` with the matching class of `g2` under `map`.
    fn image<'a>(&'a self, map: &'a [Vertex]) -> impl Iterator<Item = (&'a [Edge], &'a [Edge])> + 'a {
        self.source.iter().map(move |((a, b), es)| {
            let (x, y) = (map[*a], map[*b]);
            let key = if x <= y { (x, y) } else { (y, x) };
            (es.as_slice(), self.target[&key].as_slice())
        })
    }
}

fn initial_colours(n: usize, given: Option<&[u32]>) -> Vec<u32> {
    match given {
        Some(c) => c.to_vec(),
        None => vec![0; n],
    }
}

/// First isomorphism in the canonical search order, if any.
pub fn isomorphic(g1: &Multigraph, g2: &Multigraph, budget: usize) -> IsoOutcome {
    isomorphic_coloured(g1, None, g2, None, budget)
}

/// As [`isomorphic`], restricted to maps preserving the given vertex
/// colours.
pub fn isomorphic_coloured(
    g1: &Multigraph,
    col1: Option<&[u32]>,
    g2: &Multigraph,
    col2: Option<&[u32]>,
    budget: usize,
) -> IsoOutcome {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return IsoOutcome::NotIsomorphic;
    }
    let mut search = Search { s1: Shape::new(g1), s2: Shape::new(g2), nodes: 0, budget };
    let mut c1 = initial_colours(g1.vertex_count(), col1);
    let mut c2 = initial_colours(g2.vertex_count(), col2);
    if !same_histogram(&c1, &c2) || !refine(&search.s1, &mut c1, &search.s2, &mut c2) {
        return IsoOutcome::NotIsomorphic;
    }
    let mut found = None;
    let step = search.run(c1, c2, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    match (step, found) {
        (_, Some(map)) => {
            let classes = ParallelClasses::new(g1, g2);
            let mut edge_map = vec![0; g1.edge_count()];
            for (src, dst) in classes.image(&map) {
                for (&e, &f) in src.iter().zip(dst) {
                    edge_map[e] = f;
                }
            }
            IsoOutcome::Isomorphic(Isomorphism { vertex_map: map, edge_map })
        }
        (Step::OutOfBudget, None) => IsoOutcome::Undecided,
        _ => IsoOutcome::NotIsomorphic,
    }
}

/// Visits every automorphism once, in a deterministic order. Parallel
/// edges and loops may be permuted among themselves, so one vertex map
/// can carry several automorphisms.
pub fn for_each_automorphism(
    g: &Multigraph,
    budget: usize,
    mut visit: impl FnMut(&Isomorphism) -> bool,
) -> Enumeration {
    let mut search = Search { s1: Shape::new(g), s2: Shape::new(g), nodes: 0, budget };
    let mut c1 = vec![0; g.vertex_count()];
    let mut c2 = c1.clone();
    refine(&search.s1, &mut c1, &search.s2, &mut c2);
    let mut count = 0usize;
    let mut stopped = false;
    let parallel = ParallelClasses::new(g, g);
    let step = search.run(c1, c2, &mut |map| {
        let classes: Vec<(&[Edge], &[Edge])> = parallel.image(map).collect();
        let mut perms: Vec<Vec<usize>> = classes.iter().map(|(s, _)| (0..s.len()).collect()).collect();
        loop {
            let mut edge_map = vec![0; g.edge_count()];
            for ((src, dst), p) in classes.iter().zip(&perms) {
                for (i, &e) in src.iter().enumerate() {
                    edge_map[e] = dst[p[i]];
                }
            }
            count += 1;
            if !visit(&Isomorphism { vertex_map: map.to_vec(), edge_map }) {
                stopped = true;
                return false;
            }
            // odometer over the permutations of each class
            let mut i = perms.len();
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if next_permutation(&mut perms[i]) {
                    break;
                }
                perms[i].sort_unstable();
            }
        }
    });
    match step {
        Step::OutOfBudget => Enumeration::Undecided,
        _ if stopped => Enumeration::Stopped,
        _ => Enumeration::Complete(count),
    }
}

/// Vertex maps generating the automorphism group's action on vertices:
/// transversals of a point-stabiliser chain, each found by a coloured
/// isomorphism search. `None` if a search runs out of budget.
pub fn automorphism_generators(g: &Multigraph, budget: usize) -> Option<Vec<Isomorphism>> {
    let n = g.vertex_count();
    let shape = Shape::new(g);
    let mut fixed: Vec<Vertex> = Vec::new();
    let mut gens = Vec::new();
    loop {
        let mut c = vec![0u32; n];
        for (i, &b) in fixed.iter().enumerate() {
            c[b] = i as u32 + 1;
        }
        let mut c2 = c.clone();
        refine(&shape, &mut c, &shape, &mut c2);
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in &c {
            *sizes.entry(x).or_default() += 1;
        }
        let Some(colour) = sizes.iter().filter(|(_, &k)| k > 1).min_by_key(|(&x, &k)| (k, x)).map(|(&x, _)| x) else {
            return Some(gens);
        };
        let b = (0..n).find(|&v| c[v] == colour).expect("class is nonempty");
        let fresh = c.iter().max().copied().unwrap_or(0) + 1;
        let mut orbit = BTreeSet::from([b]);
        let mut level: Vec<Vec<Vertex>> = Vec::new();
        for y in (0..n).filter(|&y| c[y] == colour && y != b) {
            if orbit.contains(&y) {
                continue;
            }
            let (mut d1, mut d2) = (c.clone(), c.clone());
            d1[b] = fresh;
            d2[y] = fresh;
            match isomorphic_coloured(g, Some(&d1), g, Some(&d2), budget) {
                IsoOutcome::Isomorphic(a) => {
                    level.push(a.vertex_map.clone());
                    gens.push(a);
                    // close the orbit of b under this level's generators
                    let mut stack: Vec<Vertex> = orbit.iter().copied().collect();
                    while let Some(x) = stack.pop() {
                        for p in &level {
                            if orbit.insert(p[x]) {
                                stack.push(p[x]);
                            }
                        }
                    }
                }
                IsoOutcome::NotIsomorphic => {}
                IsoOutcome::Undecided => return None,
            }
        }
        fixed.push(b);
    }
}

/// The whole automorphism group as a list, or `None` once `budget`
/// search nodes or `max_count` automorphisms are exceeded.
pub fn automorphisms(g: &Multigraph, budget: usize, max_count: usize) -> Option<Vec<Isomorphism>> {
    let mut out = Vec::new();
    let mut too_many = false;
    let r = for_each_automorphism(g, budget, |a| {
        if out.len() >= max_count {
            too_many = true;
            return false;
        }
        out.push(a.clone());
        true
    });
    match r {
        Enumeration::Complete(_) if !too_many => Some(out),
        _ => None,
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_span_the_group() {
        // closure of the generators has the full order, by brute force
        for g in [
            Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            Multigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
            Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
        ] {
            let gens = automorphism_generators(&g, DEFAULT_BUDGET).unwrap();
            let mut seen = BTreeSet::from([(0..g.vertex_count()).collect::<Vec<_>>()]);
            let mut stack: Vec<Vec<usize>> = seen.iter().cloned().collect();
            while let Some(p) = stack.pop() {
                for a in &gens {
                    let q: Vec<usize> = p.iter().map(|&x| a.vertex_map[x]).collect();
                    if seen.insert(q.clone()) {
                        stack.push(q);
                    }
                }
            }
            let all = automorphisms(&g, DEFAULT_BUDGET, 100_000).unwrap();
            let vertex_maps: BTreeSet<_> = all.into_iter().map(|a| a.vertex_map).collect();
            assert_eq!(seen, vertex_maps);
        }
    }

    use alloc::collections::BTreeSet;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges)
    }

    fn count(g: &Multigraph) -> usize {
        automorphisms(g, DEFAULT_BUDGET, usize::MAX).unwrap().len()
    }

    #[test]
    fn small_groups() {
        assert_eq!(count(&cycle(3)), 6);
        assert_eq!(count(&cycle(4)), 8);
        assert_eq!(count(&Multigraph::from_edges(3, &[(0, 1), (1, 2)])), 2);
        // theta graph: swap the ends, permute the three edges
        assert_eq!(count(&Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)])), 12);
    }

    #[test]
    fn identity_found_for_self() {
        let g = cycle(5);
        match isomorphic(&g, &g, DEFAULT_BUDGET) {
            IsoOutcome::Isomorphic(iso) => assert!(iso.is_valid(&g, &g)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangle_vs_path() {
        let k3 = cycle(3);
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(isomorphic(&k3, &p3, DEFAULT_BUDGET), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn relabelled_five_cycle_matches_brute_force() {
        let g = cycle(5);
        let h = g.permuted(&[3, 0, 4, 1, 2]);
        let brute = brute_force_maps(&g, &h);
        assert!(!brute.is_empty());
        match isomorphic(&g, &h, DEFAULT_BUDGET) {
            IsoOutcome::Isomorphic(iso) => {
                assert!(iso.is_valid(&g, &h));
                assert!(brute.contains(&iso.vertex_map));
            }
            other => panic!("{other:?}"),
        }
    }

    // all 5! vertex maps that are adjacency-preserving
    fn brute_force_maps(g: &Multigraph, h: &Multigraph) -> BTreeSet<Vec<usize>> {
        let n = g.vertex_count();
        let mut p: Vec<usize> = (0..n).collect();
        let mut out = BTreeSet::new();
        loop {
            let ok = g.edges().all(|e| {
                let (a, b) = g.ends(e);
                h.edges_between(p[a], p[b]).count() == g.edges_between(a, b).count()
            });
            if ok {
                out.insert(p.clone());
            }
            if !next_permutation(&mut p) {
                return out;
            }
        }
    }

    #[test]
    fn group_closed_under_composition_and_inverse() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let auts = automorphisms(&g, DEFAULT_BUDGET, usize::MAX).unwrap();
        let set: BTreeSet<_> = auts.iter().cloned().collect();
        assert!(set.contains(&Isomorphism::identity(&g)));
        for a in &auts {
            assert!(a.is_valid(&g, &g));
            assert!(set.contains(&a.inverse()));
            for b in &auts {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn budget_gives_undecided() {
        let edges: Vec<_> = (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect();
        let k8 = Multigraph::from_edges(8, &edges);
        assert_eq!(for_each_automorphism(&k8, 10, |_| true), Enumeration::Undecided);
    }
}
