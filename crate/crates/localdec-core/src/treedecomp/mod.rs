//! Tree-decompositions, and the one a finite nested set of proper
//! separations induces through its splitting stars.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::{Edge, Multigraph, Vertex};
use crate::tangles::{OrientedSeparation, Separation};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Cap on the number of consistent orientations enumerated.
pub const ORIENTATION_BUDGET: usize = 1_000_000;

/// The maximal elements of a consistent orientation, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplittingStar {
    pub separations: Vec<OrientedSeparation>,
}

fn check_nested(n: &[Separation]) -> Result<()> {
    if n.iter().any(|s| !s.is_proper()) {
        return Err(Error::ImproperSeparation);
    }
    for (i, s) in n.iter().enumerate() {
        if n[i + 1..].iter().any(|t| s.crosses(t)) {
            return Err(Error::CrossingSeparations);
        }
    }
    Ok(())
}

/// Neither `x` nor `y` is the inverse of something below the other.
fn consistent_pair(x: &OrientedSeparation, y: &OrientedSeparation) -> bool {
    x.unoriented() == y.unoriented() || (!x.reverse().le(y) && !y.reverse().le(x))
}

/// No `(B, A)` in `o` whenever `(A, B) ≤ (C, D) ∈ o` for distinct
/// underlying separations.
pub fn is_consistent(o: &[OrientedSeparation]) -> bool {
    o.iter().enumerate().all(|(i, x)| o[i + 1..].iter().all(|y| consistent_pair(x, y)))
}

/// All consistent orientations of a finite nested set, each listed in the
/// order of `n`.
pub fn consistent_orientations(n: &[Separation]) -> Result<Vec<Vec<OrientedSeparation>>> {
    check_nested(n)?;
    let mut out = Vec::new();
    let mut chosen: Vec<OrientedSeparation> = Vec::with_capacity(n.len());
    // explicit stack of the next orientation to try at each depth
    let mut next = vec![0usize];
    while let Some(top) = next.last_mut() {
        let depth = chosen.len();
        if depth == n.len() {
            out.push(chosen.clone());
            if out.len() > ORIENTATION_BUDGET {
                return Err(Error::BudgetExceeded("consistent orientations"));
            }
            next.pop();
            chosen.pop();
            continue;
        }
        if *top == 2 {
            next.pop();
            chosen.pop();
            continue;
        }
        let o = n[depth].orientations()[*top].clone();
        *top += 1;
        if chosen.iter().all(|c| consistent_pair(c, &o)) {
            chosen.push(o);
            next.push(0);
        }
    }
    Ok(out)
}

/// The splitting stars of a finite nested set, sorted. Every oriented
/// separation lies in exactly one of them.
pub fn splitting_stars(n: &[Separation]) -> Result<Vec<SplittingStar>> {
    let mut stars = Vec::new();
    for o in consistent_orientations(n)? {
        let mut max: Vec<OrientedSeparation> = o
            .iter()
            .filter(|&x| !o.iter().any(|y| y != x && x.le(y)))
            .cloned()
            .collect();
        if !o.iter().all(|x| max.iter().any(|m| x.le(m))) {
            return Err(Error::Postcondition("orientation not dominated by its maximal elements".into()));
        }
        max.sort();
        stars.push(SplittingStar { separations: max });
    }
    stars.sort();
    stars.dedup();
    let mut count: BTreeMap<&OrientedSeparation, usize> = BTreeMap::new();
    for s in &stars {
        for x in &s.separations {
            *count.entry(x).or_default() += 1;
        }
    }
    let all_once = n.iter().flat_map(|s| s.orientations()).all(|x| count.get(&x) == Some(&1));
    if !all_once || count.len() != 2 * n.len() {
        return Err(Error::Postcondition("splitting stars do not partition the orientations".into()));
    }
    Ok(stars)
}

/// A decomposition tree with one vertex set per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Multigraph,
    pub parts: Vec<BitSet>,
    /// The splitting star behind each node, when induced by a nested set.
    pub stars: Vec<SplittingStar>,
}

impl TreeDecomposition {
    pub fn new(tree: Multigraph, parts: Vec<BitSet>) -> Self {
        TreeDecomposition { tree, parts, stars: Vec::new() }
    }

    /// Nodes of the component of `T − e` containing `t`.
    fn branch(&self, e: Edge, t: Vertex) -> BitSet {
        let mut seen = BitSet::new(self.tree.vertex_count());
        seen.insert(t);
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for &f in self.tree.incident(u) {
                let w = self.tree.other_end(f, u);
                if f != e && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn union_of_parts(&self, nodes: &BitSet, n: usize) -> BitSet {
        let mut a = BitSet::new(n);
        for t in nodes.iter() {
            a.union_with(&self.parts[t]);
        }
        a
    }

    /// `α(t, t′) = (A_t, A_{t′})` for the tree edge `e` from `t` to `t′`.
    pub fn alpha(&self, e: Edge, from: Vertex) -> OrientedSeparation {
        let to = self.tree.other_end(e, from);
        let n = self.parts.first().map_or(0, BitSet::capacity);
        OrientedSeparation {
            small: self.union_of_parts(&self.branch(e, from), n),
            big: self.union_of_parts(&self.branch(e, to), n),
        }
    }

    /// The separation induced by each tree edge, in edge order.
    pub fn induced_separations(&self) -> Vec<Separation> {
        self.tree.edges().map(|e| self.alpha(e, self.tree.ends(e).0).unoriented()).collect()
    }

    pub fn adhesion(&self, e: Edge) -> BitSet {
        let (a, b) = self.tree.ends(e);
        self.parts[a].intersection(&self.parts[b])
    }
}

/// Each node is a splitting star, stars containing the two orientations
/// of a member of `n` are adjacent through the tree edge of that member,
/// and `V_t` is the intersection of the big sides in `t`.
pub fn induce_tree_decomposition(g: &Multigraph, n: &[Separation]) -> Result<TreeDecomposition> {
    let stars = splitting_stars(n)?;
    let nv = g.vertex_count();
    let mut star_of: BTreeMap<&OrientedSeparation, usize> = BTreeMap::new();
    for (i, s) in stars.iter().enumerate() {
        for x in &s.separations {
            star_of.insert(x, i);
        }
    }
    let edges: Vec<(Vertex, Vertex)> = n
        .iter()
        .map(|s| {
            let [ab, ba] = s.orientations();
            (star_of[&ab], star_of[&ba])
        })
        .collect();
    let names = (0..stars.len()).map(|i| format!("t{i}")).collect();
    let named = edges.iter().enumerate().map(|(i, &(a, b))| (format!("s{i}"), a, b)).collect();
    let tree = Multigraph::new(names, named)?;
    let parts = stars
        .iter()
        .map(|s| {
            let mut p = BitSet::full(nv);
            for x in &s.separations {
                p.intersect_with(&x.big);
            }
            p
        })
        .collect();
    let td = TreeDecomposition { tree, parts, stars };
    let report = verify_tree_decomposition(g, &td);
    if !report.all_pass() {
        return Err(Error::Postcondition(format!("induced tree-decomposition fails: {report:?}")));
    }
    // α maps the edge from the star of (B, A) to that of (A, B) onto (A, B)
    for (i, s) in n.iter().enumerate() {
        let [ab, _] = s.orientations();
        if td.alpha(i, edges[i].1) != ab {
            return Err(Error::Postcondition(format!("α does not return member {i} of N")));
        }
    }
    Ok(td)
}

/// The axioms and standard properties of a tree-decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeReport {
    pub is_tree: bool,
    pub t1: bool,
    pub t2: bool,
    /// The separator of every `α(e)` is `V_t ∩ V_{t′}`.
    pub adhesion_sets: bool,
    pub regular: bool,
    pub nonempty_parts: bool,
    /// Vacuous for finite trees.
    pub point_finite: bool,
    pub max_adhesion: usize,
}

impl TreeReport {
    pub fn all_pass(&self) -> bool {
        self.is_tree && self.t1 && self.t2 && self.adhesion_sets && self.regular && self.nonempty_parts && self.point_finite
    }
}

pub fn verify_tree_decomposition(g: &Multigraph, td: &TreeDecomposition) -> TreeReport {
    let t = &td.tree;
    let nv = g.vertex_count();
    let shapes_ok = td.parts.len() == t.vertex_count() && td.parts.iter().all(|p| p.capacity() == nv);
    let no_multi = t.edges().all(|e| !t.is_loop(e) && t.edges_between(t.ends(e).0, t.ends(e).1).count() == 1);
    let is_tree = shapes_ok
        && t.vertex_count() > 0
        && t.edge_count() + 1 == t.vertex_count()
        && t.is_connected()
        && no_multi;
    if !shapes_ok {
        return TreeReport {
            is_tree,
            t1: false,
            t2: false,
            adhesion_sets: false,
            regular: false,
            nonempty_parts: false,
            point_finite: true,
            max_adhesion: 0,
        };
    }
    let in_part = |u: Vertex, w: Vertex| td.parts.iter().any(|p| p.contains(u) && p.contains(w));
    let t1 = g.vertices().all(|v| in_part(v, v)) && g.edges().all(|e| in_part(g.ends(e).0, g.ends(e).1));
    let t2 = g.vertices().all(|v| {
        let nodes: Vec<Vertex> = t.vertices().filter(|&s| td.parts[s].contains(v)).collect();
        let Some(&first) = nodes.first() else { return true };
        let mut seen = BitSet::new(t.vertex_count());
        seen.insert(first);
        let mut stack = vec![first];
        while let Some(u) = stack.pop() {
            for &f in t.incident(u) {
                let w = t.other_end(f, u);
                if td.parts[w].contains(v) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.count() == nodes.len()
    });
    let nonempty_parts = td.parts.iter().all(|p| !p.is_empty());
    let max_adhesion = t.edges().map(|e| td.adhesion(e).count()).max().unwrap_or(0);
    let (adhesion_sets, regular) = if is_tree {
        let seps = td.induced_separations();
        (
            seps.iter().enumerate().all(|(e, s)| s.separator() == td.adhesion(e)),
            seps.iter().all(Separation::is_proper),
        )
    } else {
        (false, false)
    };
    TreeReport { is_tree, t1, t2, adhesion_sets, regular, nonempty_parts, point_finite: true, max_adhesion }
}

/// Node permutations `ψ` of the tree with `φ(V_t) = V_{ψ(t)}` that are
/// tree automorphisms, up to `limit` of them. For a regular
/// decomposition there is at most one.
pub fn tree_actions(td: &TreeDecomposition, vertex_map: &[Vertex], limit: usize) -> Vec<Vec<Vertex>> {
    let t = &td.tree;
    let m = t.vertex_count();
    let image = |p: &BitSet| BitSet::from_iter(p.capacity(), p.iter().map(|v| vertex_map[v]));
    let cands: Vec<Vec<Vertex>> = td
        .parts
        .iter()
        .map(|p| {
            let q = image(p);
            (0..m).filter(|&s| td.parts[s] == q).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut psi = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn go(
        t: &Multigraph,
        cands: &[Vec<Vertex>],
        i: usize,
        psi: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Vertex>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == cands.len() {
            out.push(psi.clone());
            return;
        }
        for &c in &cands[i] {
            if used[c] {
                continue;
            }
            let ok = (0..i).all(|j| t.edges_between(i, j).count() == t.edges_between(c, psi[j]).count());
            if ok {
                psi[i] = c;
                used[c] = true;
                go(t, cands, i + 1, psi, used, out, limit);
                used[c] = false;
            }
        }
        psi[i] = usize::MAX;
    }
    go(t, &cands, 0, &mut psi, &mut used, &mut out, limit);
    out
}

/// The unique tree action of an automorphism on a regular decomposition.
pub fn induced_tree_action(td: &TreeDecomposition, vertex_map: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut found = tree_actions(td, vertex_map, 2);
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::NotDeckCanonical),
        _ => Err(Error::Postcondition("tree action of an automorphism is not unique".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `count` copies of `K5`, consecutive ones sharing a vertex.
    pub(crate) fn k5_chain(count: usize) -> Multigraph {
        let mut e = Vec::new();
        for c in 0..count {
            let base = c * 4;
            for a in 0..5 {
                for b in a + 1..5 {
                    e.push((base + a, base + b));
                }
            }
        }
        Multigraph::from_edges(count * 4 + 1, &e)
    }

    /// The cut at `4i` of a `K5` chain, cliques `< i` on the small side.
    fn cut(n: usize, i: usize) -> Separation {
        Separation::new(BitSet::from_iter(n, 0..=4 * i), BitSet::from_iter(n, 4 * i..n))
    }

    #[test]
    fn empty_set_gives_one_node() {
        let g = k5_chain(1);
        assert_eq!(consistent_orientations(&[]).unwrap(), [Vec::<OrientedSeparation>::new()]);
        assert_eq!(splitting_stars(&[]).unwrap().len(), 1);
        let td = induce_tree_decomposition(&g, &[]).unwrap();
        assert_eq!(td.parts, [BitSet::full(5)]);
    }

    #[test]
    fn single_separation() {
        let g = k5_chain(2);
        let n = [cut(9, 1)];
        assert_eq!(consistent_orientations(&n).unwrap().len(), 2);
        assert_eq!(splitting_stars(&n).unwrap().len(), 2);
        let td = induce_tree_decomposition(&g, &n).unwrap();
        let mut parts = td.parts.clone();
        parts.sort();
        assert_eq!(parts, [BitSet::from_iter(9, 0..5), BitSet::from_iter(9, 4..9)]);
        assert_eq!(td.induced_separations(), n);
    }

    #[test]
    fn chain_of_two_gives_three_stars() {
        let g = k5_chain(3);
        let n = [cut(13, 1), cut(13, 2)];
        // one of the four orientations points the two cuts away from each other
        assert_eq!(consistent_orientations(&n).unwrap().len(), 3);
        let stars = splitting_stars(&n).unwrap();
        assert_eq!(stars.len(), 3);
        assert_eq!(stars.iter().map(|s| s.separations.len()).sum::<usize>(), 4);
        let td = induce_tree_decomposition(&g, &n).unwrap();
        let mut parts = td.parts.clone();
        parts.sort();
        let want: Vec<BitSet> = (0..3).map(|c| BitSet::from_iter(13, 4 * c..4 * c + 5)).collect();
        let mut want = want;
        want.sort();
        assert_eq!(parts, want);
        assert_eq!(verify_tree_decomposition(&g, &td).max_adhesion, 1);
    }

    #[test]
    fn rejects_crossing_and_improper() {
        let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let set = |v: &[usize]| BitSet::from_iter(4, v.iter().copied());
        let s = Separation::from_sides(&c4, set(&[0, 1, 2]), set(&[0, 2, 3])).unwrap();
        let t = Separation::from_sides(&c4, set(&[1, 2, 3]), set(&[0, 1, 3])).unwrap();
        assert_eq!(induce_tree_decomposition(&c4, &[s, t]), Err(Error::CrossingSeparations));
        let v = Separation::new(BitSet::full(4), set(&[0, 1]));
        assert_eq!(splitting_stars(&[v]), Err(Error::ImproperSeparation));
    }

    #[test]
    fn verifier_catches_broken_decompositions() {
        let g = k5_chain(3);
        let td = induce_tree_decomposition(&g, &[cut(13, 1), cut(13, 2)]).unwrap();
        assert!(verify_tree_decomposition(&g, &td).all_pass());
        let mut missing = td.clone();
        missing.parts[0] = BitSet::new(13);
        let r = verify_tree_decomposition(&g, &missing);
        assert!(!r.t1 && !r.nonempty_parts);
        // swapping the middle part with a leaf disconnects T_v for shared vertices
        let mid = (0..3).find(|&t| td.tree.degree(t) == 2).unwrap();
        let leaf = (0..3).find(|&t| t != mid).unwrap();
        let mut swapped = td.clone();
        swapped.parts.swap(mid, leaf);
        let r = verify_tree_decomposition(&g, &swapped);
        assert!(r.t1 && !r.t2);
    }

    #[test]
    fn reflection_acts_uniquely_on_the_tree() {
        let g = k5_chain(3);
        let td = induce_tree_decomposition(&g, &[cut(13, 1), cut(13, 2)]).unwrap();
        let flip: Vec<usize> = (0..13).map(|v| 12 - v).collect();
        let psi = induced_tree_action(&td, &flip).unwrap();
        let mid = (0..3).find(|&t| td.tree.degree(t) == 2).unwrap();
        assert_eq!(psi[mid], mid);
        assert!((0..3).any(|t| psi[t] != t));
        // a map that is no automorphism has no action
        let mut bad: Vec<usize> = (0..13).collect();
        bad.swap(0, 6);
        assert_eq!(induced_tree_action(&td, &bad), Err(Error::NotDeckCanonical));
    }
}
