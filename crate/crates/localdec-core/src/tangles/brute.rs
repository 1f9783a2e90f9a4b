//! Exhaustive reference enumerations for graphs of a handful of vertices,
//! straight from the definitions. Used to cross-check the fast paths.

use super::{OrientedSeparation, Separation};
use crate::bitset::BitSet;
use crate::multigraph::Multigraph;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Every separation of order below `k`, improper ones included, by
/// assigning each vertex to `A`, `B` or both.
pub fn separations(g: &Multigraph, k: usize) -> Vec<Separation> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let (mut a, mut b) = (BitSet::new(n), BitSet::new(n));
        let mut c = code;
        for v in 0..n {
            match c % 3 {
                0 => {
                    a.insert(v);
                }
                1 => {
                    b.insert(v);
                }
                _ => {
                    a.insert(v);
                    b.insert(v);
                }
            }
            c /= 3;
        }
        if a.intersection(&b).count() >= k {
            continue;
        }
        if let Ok(s) = Separation::from_sides(g, a, b) {
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// `G[A₁] ∪ G[A₂] ∪ G[A₃] = G`.
pub fn covers(g: &Multigraph, sides: [&BitSet; 3]) -> bool {
    g.vertices().all(|v| sides.iter().any(|s| s.contains(v)))
        && g.edges().all(|e| {
            let (u, v) = g.ends(e);
            sides.iter().any(|s| s.contains(u) && s.contains(v))
        })
}

fn proper_separations(g: &Multigraph, k: usize) -> Vec<Separation> {
    let mut seps: Vec<_> = separations(g, k).into_iter().filter(|s| s.is_proper()).collect();
    seps.sort_by(|s, t| (s.order(), s).cmp(&(t.order(), t)));
    seps
}

/// Every orientation of the proper separations of order below `k` in
/// which no three small sides cover `G`, each listed as small sides in
/// the order of [`orientation_of`]. The improper separations `(Y, V)`
/// take part in the triples with their only possible orientation.
pub fn tangles(g: &Multigraph, k: usize) -> Vec<Vec<OrientedSeparation>> {
    let seps = proper_separations(g, k);
    let n = g.vertex_count();
    let forced: Vec<BitSet> = (0u64..(1u64 << n))
        .filter(|m| (m.count_ones() as usize) < k)
        .map(|m| BitSet::from_iter(n, (0..n).filter(|&v| m >> v & 1 == 1)))
        .collect();
    let mut out = Vec::new();
    let triples_ok = |sides: &[&BitSet], new: &BitSet| {
        sides.iter().all(|x| sides.iter().all(|y| !covers(g, [new, x, y])))
    };
    let forced_refs: Vec<&BitSet> = forced.iter().collect();
    if !forced.iter().all(|f| triples_ok(&forced_refs, f)) {
        return out;
    }
    let mut chosen: Vec<OrientedSeparation> = Vec::new();
    fn go(
        g: &Multigraph,
        seps: &[Separation],
        forced: &[BitSet],
        chosen: &mut Vec<OrientedSeparation>,
        out: &mut Vec<Vec<OrientedSeparation>>,
    ) {
        let i = chosen.len();
        if i == seps.len() {
            out.push(chosen.clone());
            return;
        }
        for o in seps[i].orientations() {
            let sides: Vec<&BitSet> = forced.iter().chain(chosen.iter().map(|c| &c.small)).chain([&o.small]).collect();
            if sides.iter().all(|x| sides.iter().all(|y| !covers(g, [&o.small, x, y]))) {
                chosen.push(o);
                go(g, seps, forced, chosen, out);
                chosen.pop();
            }
        }
    }
    go(g, &seps, &forced, &mut chosen, &mut out);
    out
}

/// Lists `orient(s)` over the proper separations of order below `k`.
pub fn orientation_of(
    g: &Multigraph,
    k: usize,
    orient: impl Fn(&Separation) -> OrientedSeparation,
) -> Vec<OrientedSeparation> {
    proper_separations(g, k).iter().map(orient).collect()
}

/// Maximal sets of at least `k` vertices no two of which are split by a
/// separation of order below `k`.
pub fn blocks(g: &Multigraph, k: usize) -> Vec<BitSet> {
    let n = g.vertex_count();
    let seps = separations(g, k);
    let split = |u: usize, v: usize| {
        seps.iter().any(|s| {
            let (a, b) = s.sides();
            (a.contains(u) && !b.contains(u) && b.contains(v) && !a.contains(v))
                || (a.contains(v) && !b.contains(v) && b.contains(u) && !a.contains(u))
        })
    };
    let mut good = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if (mask.count_ones() as usize) < k {
            continue;
        }
        let set = BitSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        let vs = set.to_vec();
        let inseparable = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| !split(u, v)));
        if inseparable {
            good.push(set);
        }
    }
    let maximal: Vec<BitSet> = good
        .iter()
        .filter(|s| !good.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect();
    let mut maximal = maximal;
    maximal.sort();
    maximal
}
