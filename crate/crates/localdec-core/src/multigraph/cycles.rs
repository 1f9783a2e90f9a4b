use super::{spanning_tree, Edge, Multigraph, OrientedEdge, Vertex, Walk};
use crate::gf2::Echelon;
use alloc::vec;
use alloc::vec::Vec;

/// A cycle as a cyclic sequence: `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (indices mod length). The sequence starts at the
/// least vertex and runs toward its lower neighbour; for a parallel pair
/// the lower edge comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleSubgraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl CycleSubgraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The closed walk once around, starting at `vertices[0]`.
    pub fn once_around(&self, g: &Multigraph) -> Walk {
        let k = self.len();
        let steps = (0..k)
            .map(|i| {
                let e = self.edges[i];
                if g.is_loop(e) {
                    OrientedEdge::new(e, true)
                } else {
                    OrientedEdge::leaving(g, e, self.vertices[i])
                }
            })
            .collect();
        Walk { start: self.vertices[0], steps }
    }

    pub fn edge_vector(&self, m: usize) -> Vec<u64> {
        let mut row = vec![0u64; m.div_ceil(64)];
        for &e in &self.edges {
            row[e / 64] ^= 1 << (e % 64);
        }
        row
    }
}

/// All cycles of length at most `r`, each once, ordered by length, then
/// vertex sequence, then edge sequence. Loops have length 1 and a pair of
/// parallel edges forms a cycle of length 2.
pub fn enumerate_short_cycles(g: &Multigraph, r: usize) -> Vec<CycleSubgraph> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    for e in g.edges() {
        if g.is_loop(e) {
            out.push(CycleSubgraph { vertices: vec![g.ends(e).0], edges: vec![e] });
        }
    }
    if r >= 2 {
        for u in g.vertices() {
            let mut by_nbr: Vec<(Vertex, Edge)> = g
                .incident(u)
                .iter()
                .filter(|&&e| !g.is_loop(e) && g.ends(e).0 == u)
                .map(|&e| (g.ends(e).1, e))
                .collect();
            by_nbr.sort_unstable();
            for i in 0..by_nbr.len() {
                for j in i + 1..by_nbr.len() {
                    if by_nbr[i].0 == by_nbr[j].0 {
                        out.push(CycleSubgraph {
                            vertices: vec![u, by_nbr[i].0],
                            edges: vec![by_nbr[i].1, by_nbr[j].1],
                        });
                    }
                }
            }
        }
    }
    if r >= 3 {
        let mut on_path = vec![false; g.vertex_count()];
        for s in g.vertices() {
            let mut path_v = vec![s];
            let mut path_e = Vec::new();
            on_path[s] = true;
            extend_paths(g, r, s, &mut path_v, &mut path_e, &mut on_path, &mut out);
            on_path[s] = false;
        }
    }
    out.sort();
    out
}

fn extend_paths(
    g: &Multigraph,
    r: usize,
    s: Vertex,
    path_v: &mut Vec<Vertex>,
    path_e: &mut Vec<Edge>,
    on_path: &mut [bool],
    out: &mut Vec<CycleSubgraph>,
) {
    let w = *path_v.last().unwrap();
    for &e in g.incident(w) {
        if g.is_loop(e) {
            continue;
        }
        let x = g.other_end(e, w);
        if x == s && path_e.len() >= 2 && path_v[1] < w {
            let mut edges = path_e.clone();
            edges.push(e);
            out.push(CycleSubgraph { vertices: path_v.clone(), edges });
        } else if x > s && !on_path[x] && path_e.len() + 2 <= r {
            on_path[x] = true;
            path_v.push(x);
            path_e.push(e);
            extend_paths(g, r, s, path_v, path_e, on_path, out);
            path_e.pop();
            path_v.pop();
            on_path[x] = false;
        }
    }
}

/// A basis of the binary cycle space in reduced echelon form, pivots on
/// the lowest edge index of each vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCycleSpace {
    pub edge_count: usize,
    pub basis: Vec<Vec<u64>>,
}

impl BinaryCycleSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Fundamental cycles of a breadth-first spanning forest, reduced.
pub fn cycle_space_basis(g: &Multigraph) -> BinaryCycleSpace {
    let m = g.edge_count();
    let mut ech = Echelon::new(m);
    for vectors in fundamental_cycle_vectors(g) {
        ech.insert(vectors);
    }
    BinaryCycleSpace { edge_count: m, basis: ech.reduced_basis() }
}

fn fundamental_cycle_vectors(g: &Multigraph) -> Vec<Vec<u64>> {
    let m = g.edge_count();
    let mut out = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&crate::bitset::BitSet::from_iter(g.vertex_count(), comp.iter().copied()));
        let local = sub.to_multigraph(g);
        let tree = spanning_tree(&local, 0).expect("component is connected");
        // translate local edge ids back to the host
        for w in super::fundamental_walks(&local, &tree) {
            let mut row = vec![0u64; m.div_ceil(64)];
            for s in &w.steps {
                let e = sub.edges[s.edge];
                row[e / 64] ^= 1 << (e % 64);
            }
            out.push(row);
        }
    }
    out
}

/// True iff the cycles of length at most `r` span the binary cycle space.
pub fn short_cycles_span(g: &Multigraph, r: usize) -> bool {
    let m = g.edge_count();
    let target = m + g.components().len() - g.vertex_count();
    let mut ech = Echelon::new(m);
    for c in enumerate_short_cycles(g, r) {
        if ech.rank() == target {
            break;
        }
        ech.insert(c.edge_vector(m));
    }
    ech.rank() == target
}
