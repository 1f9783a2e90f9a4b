//! Separations, tangles, blocks and the canonical nested set of
//! separations that distinguishes all tangles efficiently.

mod blocks;
pub mod brute;
mod engine;
mod nested;

pub use blocks::{block_tangle, enumerate_blocks, local_connectivity};
pub use engine::{enumerate_tangles, Separators, Tangle};
pub use nested::{canonical_nested_set, distinguishers, NestedOptions, NestedSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use alloc::vec::Vec;

/// Cap on the number of separations any single enumeration may emit.
pub const SEPARATION_BUDGET: usize = 1_000_000;

/// An unordered separation `{A, B}`, stored with `a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separation {
    a: BitSet,
    b: BitSet,
}

impl Separation {
    /// Pairs two sides without validation.
    pub fn new(a: BitSet, b: BitSet) -> Self {
        if a <= b {
            Separation { a, b }
        } else {
            Separation { a: b, b: a }
        }
    }

    /// Checks `A ∪ B = V` and that no edge joins `A∖B` to `B∖A`.
    pub fn from_sides(g: &Multigraph, a: BitSet, b: BitSet) -> Result<Self> {
        let n = g.vertex_count();
        if a.capacity() != n || b.capacity() != n || a.union(&b).count() != n {
            return Err(Error::NotASeparation);
        }
        let (pa, pb) = (a.difference(&b), b.difference(&a));
        for e in g.edges() {
            let (u, v) = g.ends(e);
            if (pa.contains(u) && pb.contains(v)) || (pa.contains(v) && pb.contains(u)) {
                return Err(Error::NotASeparation);
            }
        }
        Ok(Separation::new(a, b))
    }

    pub fn sides(&self) -> (&BitSet, &BitSet) {
        (&self.a, &self.b)
    }

    pub fn separator(&self) -> BitSet {
        self.a.intersection(&self.b)
    }

    pub fn order(&self) -> usize {
        self.separator().count()
    }

    pub fn is_proper(&self) -> bool {
        let n = self.a.capacity();
        self.a.count() != n && self.b.count() != n
    }

    pub fn orientations(&self) -> [OrientedSeparation; 2] {
        [
            OrientedSeparation { small: self.a.clone(), big: self.b.clone() },
            OrientedSeparation { small: self.b.clone(), big: self.a.clone() },
        ]
    }

    /// Some orientations satisfy `(A, B) ≤ (C, D)`.
    pub fn is_nested_with(&self, other: &Separation) -> bool {
        let [x, y] = self.orientations();
        let [u, v] = other.orientations();
        x.le(&u) || x.le(&v) || y.le(&u) || y.le(&v)
    }

    pub fn crosses(&self, other: &Separation) -> bool {
        !self.is_nested_with(other)
    }

    /// The image under a vertex permutation.
    pub fn map(&self, vertex_map: &[Vertex]) -> Separation {
        let n = self.a.capacity();
        Separation::new(
            BitSet::from_iter(n, self.a.iter().map(|v| vertex_map[v])),
            BitSet::from_iter(n, self.b.iter().map(|v| vertex_map[v])),
        )
    }
}

/// An ordered separation `(A, B)`; `A` is the small side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedSeparation {
    pub small: BitSet,
    pub big: BitSet,
}

impl OrientedSeparation {
    /// `(A, B) ≤ (C, D)` iff `A ⊆ C` and `B ⊇ D`.
    pub fn le(&self, other: &OrientedSeparation) -> bool {
        self.small.is_subset(&other.small) && other.big.is_subset(&self.big)
    }

    pub fn reverse(&self) -> OrientedSeparation {
        OrientedSeparation { small: self.big.clone(), big: self.small.clone() }
    }

    pub fn unoriented(&self) -> Separation {
        Separation::new(self.small.clone(), self.big.clone())
    }
}

/// Components of `G − X`, each with its neighbourhood in `X`.
pub(crate) fn components_avoiding(adj: &[BitSet], x: &BitSet) -> Vec<(BitSet, BitSet)> {
    let mut rest = x.complement();
    let mut out = Vec::new();
    while let Some(s) = rest.first() {
        let mut comp = BitSet::new(adj.len());
        let mut nbrs = BitSet::new(adj.len());
        let mut stack = Vec::from([s]);
        comp.insert(s);
        rest.remove(s);
        while let Some(u) = stack.pop() {
            for w in adj[u].iter() {
                if x.contains(w) {
                    nbrs.insert(w);
                } else if rest.contains(w) {
                    rest.remove(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push((comp, nbrs));
    }
    out
}

/// Every separation of order below `max_order`, each once, ordered by
/// order and then sides. Improper ones `{V, X}` only on request.
pub fn enumerate_separations(g: &Multigraph, max_order: usize, include_improper: bool) -> Result<Vec<Separation>> {
    let n = g.vertex_count();
    let adj = g.adjacency_sets();
    let mut out = Vec::new();
    for j in 0..max_order.min(n + 1) {
        for x in engine::subsets(n, j) {
            let xs = BitSet::from_iter(n, x.iter().copied());
            let comps = components_avoiding(&adj, &xs);
            if include_improper {
                out.push(Separation::new(BitSet::full(n), xs.clone()));
            }
            let m = comps.len();
            if m < 2 {
                continue;
            }
            if m >= 40 || out.len() + (1usize << (m - 1)) > SEPARATION_BUDGET {
                return Err(Error::BudgetExceeded("separation enumeration"));
            }
            // the last component always goes to B, so each pair is made once
            for mask in 1..(1usize << (m - 1)) {
                let mut a = xs.clone();
                let mut b = xs.clone();
                for (i, (c, _)) in comps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a.union_with(c);
                    } else {
                        b.union_with(c);
                    }
                }
                out.push(Separation::new(a, b));
            }
        }
    }
    out.sort_by(|s, t| (s.order(), s).cmp(&(t.order(), t)));
    out.dedup();
    Ok(out)
}

/// `G − (A∩B)` has a component inside `A∖B` and one inside `B∖A`, each
/// with the whole separator as neighbourhood.
pub fn is_tight(g: &Multigraph, s: &Separation) -> bool {
    let x = s.separator();
    let comps = components_avoiding(&g.adjacency_sets(), &x);
    let (a, b) = s.sides();
    let full = |side: &BitSet| comps.iter().any(|(c, nb)| c.is_subset(side) && *nb == x);
    full(&a.difference(&x)) && full(&b.difference(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edges(n, &edges)
    }

    #[test]
    fn triangle_has_no_small_separations() {
        let k3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(enumerate_separations(&k3, 2, false).unwrap().is_empty());
    }

    #[test]
    fn path_separations_match_brute_force() {
        let p = path(3);
        let seps = enumerate_separations(&p, 2, false).unwrap();
        let set = |v: &[usize]| BitSet::from_iter(3, v.iter().copied());
        assert_eq!(seps, [Separation::new(set(&[0, 1]), set(&[1, 2]))]);
        for k in 1..4 {
            let mut want = brute::separations(&p, k);
            want.retain(|s| s.is_proper());
            let mut got = enumerate_separations(&p, k, false).unwrap();
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
        let with = enumerate_separations(&p, 2, true).unwrap();
        assert_eq!(with.len(), 1 + 1 + 3);
    }

    #[test]
    fn single_vertex_has_none() {
        let g = Multigraph::from_edges(1, &[]);
        assert!(enumerate_separations(&g, 3, false).unwrap().is_empty());
    }

    #[test]
    fn tightness() {
        // two triangles sharing vertex 2
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let set = |v: &[usize]| BitSet::from_iter(5, v.iter().copied());
        let cut = Separation::from_sides(&g, set(&[0, 1, 2]), set(&[2, 3, 4])).unwrap();
        assert!(is_tight(&g, &cut));
        assert!(!is_tight(&g, &Separation::new(BitSet::full(5), BitSet::full(5))));
        // a path cut off at an end edge with the separator sized two
        let p = path(4);
        let s = Separation::from_sides(&p, BitSet::from_iter(4, [0, 1, 2]), BitSet::from_iter(4, [1, 2, 3])).unwrap();
        assert!(!is_tight(&p, &s));
        assert!(Separation::from_sides(&g, set(&[0, 1]), set(&[2, 3, 4])).is_err());
    }

    #[test]
    fn orientation_order_is_antisymmetric() {
        let p = path(5);
        let seps = enumerate_separations(&p, 3, false).unwrap();
        let oriented: Vec<_> = seps.iter().flat_map(|s| s.orientations()).collect();
        for x in &oriented {
            for y in &oriented {
                if x.le(y) && y.le(x) {
                    assert_eq!(x, y);
                }
            }
        }
    }
}
