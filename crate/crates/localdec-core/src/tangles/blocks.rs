use super::engine::{Separators, Tangle};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// The number of internally disjoint `u–v` paths, capped at `cap`;
/// adjacent pairs count as `cap`.
pub fn local_connectivity(g: &Multigraph, u: Vertex, v: Vertex, cap: usize) -> usize {
    if u == v || g.edges_between(u, v).next().is_some() {
        return cap;
    }
    // split every vertex w into w_in = 2w and w_out = 2w + 1
    let n = g.vertex_count();
    let big = n as i32 + 1;
    let size = 2 * n;
    let mut capacity = vec![0i32; size * size];
    for w in 0..n {
        capacity[2 * w * size + 2 * w + 1] = if w == u || w == v { big } else { 1 };
    }
    for e in g.edges() {
        let (a, b) = g.ends(e);
        if a != b {
            capacity[(2 * a + 1) * size + 2 * b] = big;
            capacity[(2 * b + 1) * size + 2 * a] = big;
        }
    }
    let (source, sink) = (2 * u + 1, 2 * v);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; size];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..size {
                if prev[y] == usize::MAX && capacity[x * size + y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            capacity[x * size + y] -= 1;
            capacity[y * size + x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<Vertex>, mut p: BitSet, mut x: BitSet, min: usize, out: &mut Vec<BitSet>) {
    if p.is_empty() && x.is_empty() {
        if r.len() >= min {
            out.push(BitSet::from_iter(adj.len(), r.iter().copied()));
        }
        return;
    }
    if r.len() + p.count() < min {
        return;
    }
    let pivot = p.union(&x).iter().max_by_key(|&w| adj[w].intersection(&p).count()).expect("nonempty");
    for v in p.difference(&adj[pivot]).to_vec() {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), min, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// All `k`-blocks: maximal sets of at least `k` vertices, no two of them
/// separated by a separation of order below `k`.
pub fn enumerate_blocks(g: &Multigraph, k: usize) -> Vec<BitSet> {
    let n = g.vertex_count();
    let mut inseparable = vec![BitSet::new(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if local_connectivity(g, u, v, k) >= k {
                inseparable[u].insert(v);
                inseparable[v].insert(u);
            }
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(&inseparable, &mut Vec::new(), BitSet::full(n), BitSet::new(n), k.max(1), &mut out);
    out.sort();
    out
}

/// The tangle `τ_X` orienting every separation of order below `k` toward
/// the side containing the `k`-block `X`. Only defined above the size
/// threshold `|X| > 3(k−1)/2`.
pub fn block_tangle(g: &Multigraph, x: &BitSet, k: usize) -> Result<Tangle> {
    if k == 0 || k > g.vertex_count() {
        return Err(Error::InvalidParameter("tangle order must lie in 1..=|V|"));
    }
    if 2 * x.count() <= 3 * (k - 1) {
        return Err(Error::BelowThreshold);
    }
    let seps = Separators::new(g, k)?;
    let t = seps
        .tangle_from(k, |members, comps| {
            let mut rest = x.clone();
            for &v in members {
                rest.remove(v);
            }
            let i = comps.iter().position(|c| c.intersects(&rest))?;
            rest.is_subset(&comps[i]).then_some(i)
        })
        .ok_or(Error::InvalidParameter("not a k-block"))?;
    if !seps.is_tangle(&t) {
        return Err(Error::Postcondition("block orientation violates the triple condition".into()));
    }
    Ok(t)
}
