//! Finite multigraphs with loops and parallel edges.
//!
//! Vertices and edges are dense indices; the index order is the canonical
//! order and "lower id" always means lower index. Names are kept only for
//! input and output.

mod cycles;
pub mod iso;
mod tree;
mod walk;

pub use cycles::{
    cycle_space_basis, enumerate_short_cycles, short_cycles_span, BinaryCycleSpace,
    CycleSubgraph,
};
pub use tree::{fundamental_walks, spanning_tree, SpanningTree};
pub use walk::{homotopic, reduce_walk, OrientedEdge, Walk};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub type Vertex = usize;
pub type Edge = usize;

pub const UNREACHABLE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    // normalised so that ends.0 <= ends.1
    ends: Vec<(Vertex, Vertex)>,
    // incident edges per vertex, ascending; a loop is listed once
    incidence: Vec<Vec<Edge>>,
}

impl Multigraph {
    /// Builds a graph from named vertices and `(name, end, end)` edges
    /// given by vertex index.
    pub fn new(vertex_names: Vec<String>, edges: Vec<(String, Vertex, Vertex)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertex_names {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for (e, a, b) in &edges {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateEdge(e.clone()));
            }
            for x in [a, b] {
                if *x >= vertex_names.len() {
                    return Err(Error::UnknownVertex(format!("#{x}")));
                }
            }
        }
        let mut g = Multigraph {
            incidence: vec![Vec::new(); vertex_names.len()],
            vertex_names,
            edge_names: Vec::with_capacity(edges.len()),
            ends: Vec::with_capacity(edges.len()),
        };
        for (name, a, b) in edges {
            g.push_edge(name, a, b);
        }
        Ok(g)
    }

    /// Unnamed graph on `n` vertices; names are `v0, v1, …` and `e0, e1, …`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let edges = edges.iter().enumerate().map(|(i, &(a, b))| (format!("e{i}"), a, b)).collect();
        Self::new(names, edges).expect("generated names are unique")
    }

    fn push_edge(&mut self, name: String, a: Vertex, b: Vertex) {
        let e = self.ends.len();
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.ends.push((a, b));
        self.edge_names.push(name);
        self.incidence[a].push(e);
        if a != b {
            self.incidence[b].push(e);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> core::ops::Range<Edge> {
        0..self.edge_count()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: Edge) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.vertex_names.iter().position(|v| v == name)
    }

    /// Endpoints with the lower index first.
    #[inline]
    pub fn ends(&self, e: Edge) -> (Vertex, Vertex) {
        self.ends[e]
    }

    #[inline]
    pub fn is_loop(&self, e: Edge) -> bool {
        let (a, b) = self.ends[e];
        a == b
    }

    #[inline]
    pub fn other_end(&self, e: Edge, v: Vertex) -> Vertex {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn incident(&self, v: Vertex) -> &[Edge] {
        &self.incidence[v]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].iter().map(|&e| if self.is_loop(e) { 2 } else { 1 }).sum()
    }

    /// Edges joining `u` and `v` (loops at `u` when equal), ascending.
    pub fn edges_between(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.incidence[u].iter().copied().filter(move |&e| {
            let (a, b) = self.ends[e];
            (a == u && b == v) || (a == v && b == u)
        })
    }

    /// Neighbour bitsets, ignoring loops.
    pub fn adjacency_sets(&self) -> Vec<BitSet> {
        let n = self.vertex_count();
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in &self.ends {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }

    /// Breadth-first distances from a set of sources.
    pub fn distances_from<I: IntoIterator<Item = Vertex>>(&self, sources: I) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &self.incidence[u] {
                let w = self.other_end(e, u);
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each as an ascending vertex list, ordered by
    /// their least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &e in &self.incidence[u] {
                    let w = self.other_end(e, u);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Applies a vertex relabelling: vertex `v` becomes `perm[v]` in the
    /// result, and edges keep their order. Handy for building relabelled
    /// copies in tests and canonicity checks.
    pub fn permuted(&self, perm: &[Vertex]) -> Multigraph {
        let n = self.vertex_count();
        let mut names = vec![String::new(); n];
        for v in self.vertices() {
            names[perm[v]] = self.vertex_names[v].clone();
        }
        let edges = self
            .edges()
            .map(|e| {
                let (a, b) = self.ends[e];
                (self.edge_names[e].clone(), perm[a], perm[b])
            })
            .collect();
        Multigraph::new(names, edges).expect("permutation keeps ids unique")
    }

    /// Induced subgraph on `vertices`.
    pub fn induced(&self, vertices: &BitSet) -> Subgraph {
        let edges = self
            .edges()
            .filter(|&e| {
                let (a, b) = self.ends[e];
                vertices.contains(a) && vertices.contains(b)
            })
            .collect();
        Subgraph { vertices: vertices.to_vec(), edges }
    }
}

/// A subgraph of some host graph, as ascending vertex and edge lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Subgraph {
    pub fn whole(g: &Multigraph) -> Self {
        Subgraph { vertices: g.vertices().collect(), edges: g.edges().collect() }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Every edge has both ends among the vertices.
    pub fn is_subgraph_of(&self, g: &Multigraph) -> bool {
        self.vertices.iter().all(|&v| v < g.vertex_count())
            && self.edges.iter().all(|&e| {
                e < g.edge_count() && {
                    let (a, b) = g.ends(e);
                    self.contains_vertex(a) && self.contains_vertex(b)
                }
            })
    }

    pub fn is_connected(&self, g: &Multigraph) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for &e in &self.edges {
            let (a, b) = g.ends(e);
            uf.union(a, b);
        }
        let root = uf.find(self.vertices[0]);
        self.vertices.iter().all(|&v| uf.find(v) == root)
    }

    /// Re-indexes the subgraph as a standalone graph, keeping the host's
    /// names and order.
    pub fn to_multigraph(&self, g: &Multigraph) -> Multigraph {
        let mut index = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in self.vertices.iter().enumerate() {
            index[v] = i;
        }
        let names = self.vertices.iter().map(|&v| g.vertex_name(v).into()).collect();
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = g.ends(e);
                (g.edge_name(e).into(), index[a], index[b])
            })
            .collect();
        Multigraph::new(names, edges).expect("subgraph of a valid graph")
    }
}

/// The ball `B(X, ϱ/2)`: vertices within distance `⌊ϱ/2⌋` of `X`, and
/// the edges `yz` with `d(x,y) + 1 + d(z,x) ≤ ϱ` for some `x ∈ X`.
pub fn ball(g: &Multigraph, centres: &[Vertex], rho: usize) -> Subgraph {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &x in centres {
        let dist = g.distances_from([x]);
        for v in g.vertices() {
            if dist[v] != UNREACHABLE && 2 * dist[v] <= rho {
                vertices.insert(v);
            }
        }
        for e in g.edges() {
            let (a, b) = g.ends(e);
            if dist[a] != UNREACHABLE && dist[b] != UNREACHABLE && dist[a] + 1 + dist[b] <= rho {
                edges.insert(e);
            }
        }
    }
    Subgraph { vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect() }
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes, keeping the smaller root. Returns false if they
    /// were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n, &edges)
    }

    #[test]
    fn rejects_duplicate_ids() {
        let r = Multigraph::new(vec!["a".into(), "a".into()], vec![]);
        assert_eq!(r, Err(Error::DuplicateVertex("a".into())));
        let r = Multigraph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), 0, 1), ("e".into(), 1, 1)],
        );
        assert_eq!(r, Err(Error::DuplicateEdge("e".into())));
    }

    #[test]
    fn ends_are_normalised_and_loops_listed_once() {
        let g = Multigraph::from_edges(2, &[(1, 0), (1, 1)]);
        assert_eq!(g.ends(0), (0, 1));
        assert_eq!(g.incident(1), &[0, 1]);
        assert_eq!(g.degree(1), 3);
    }

    #[test]
    fn ball_radius_zero_is_centre() {
        let g = cycle(6);
        let b = ball(&g, &[0], 0);
        assert_eq!(b.vertices, [0]);
        assert!(b.edges.is_empty());
    }

    #[test]
    fn ball_of_six_cycle_rho_two() {
        // closed walks of length <= 2 at v0 traverse exactly the two edges at v0
        let g = cycle(6);
        let b = ball(&g, &[0], 2);
        assert_eq!(b.vertices, [0, 1, 5]);
        assert_eq!(b.edges, [0, 5]);
    }

    #[test]
    fn ball_rho_odd_includes_far_edge_of_triangle() {
        let g = cycle(3);
        let b = ball(&g, &[0], 3);
        assert_eq!(b.edges, [0, 1, 2]);
        let b = ball(&g, &[0], 2);
        assert_eq!(b.edges, [0, 2]);
    }

    #[test]
    fn ball_empty_centres() {
        let b = ball(&cycle(4), &[], 5);
        assert!(b.vertices.is_empty() && b.edges.is_empty());
    }
}
