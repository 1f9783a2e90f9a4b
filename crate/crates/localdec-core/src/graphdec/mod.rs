//! Graph-decompositions `(H, (G_h))`: their axioms and duals, the
//! quotient of a deck-canonical tree-decomposition of a cover, the Cayley
//! model of a finite cover, and the `r`-global pipeline.

mod pipeline;
mod quotient;

pub use pipeline::{r_global_decomposition, CoverMode, GlobalDecomposition, PipelineOptions, Provenance};
pub use quotient::{cayley_model_decomposition, quotient, quotient_decomposition, truncated_quotient, Quotient};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multigraph::iso::Isomorphism;
use crate::multigraph::{Edge, Multigraph, Subgraph, Vertex};
use crate::tangles::Separation;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// A decomposition of `G` modelled on `H`. Parts need not be induced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecomposition {
    /// The model `H`; loops and parallel edges are kept.
    pub model: Multigraph,
    /// `G_h` for each node of the model, as ascending lists into `G`.
    pub parts: Vec<Subgraph>,
}

impl GraphDecomposition {
    /// One node whose part is all of `g`.
    pub fn trivial(g: &Multigraph) -> Self {
        let model = Multigraph::new(vec![String::from("h0")], Vec::new()).expect("one node");
        GraphDecomposition { model, parts: vec![Subgraph::whole(g)] }
    }

    /// `{h : v ∈ G_h}`.
    pub fn nodes_at(&self, v: Vertex) -> BitSet {
        let m = self.parts.len();
        BitSet::from_iter(m, (0..m).filter(|&h| self.parts[h].contains_vertex(v)))
    }

    /// `{h : e ∈ G_h}`.
    pub fn nodes_at_edge(&self, e: Edge) -> BitSet {
        let m = self.parts.len();
        BitSet::from_iter(m, (0..m).filter(|&h| self.parts[h].contains_edge(e)))
    }
}

/// Whether `nodes` is nonempty and spans a connected subgraph of `h`.
fn spans_connected(h: &Multigraph, nodes: &BitSet) -> bool {
    let Some(start) = nodes.first() else { return false };
    let mut seen = BitSet::new(h.vertex_count());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &f in h.incident(u) {
            let w = h.other_end(f, u);
            if nodes.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen == *nodes
}

fn strictly_ascending(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

fn share_vertex(a: &Subgraph, b: &Subgraph) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.vertices.len() && j < b.vertices.len() {
        match a.vertices[i].cmp(&b.vertices[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Pass or fail per axiom, with part and model statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// One part per node, each a well-formed subgraph of `G`.
    pub parts_valid: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub honest: bool,
    /// Vacuous for finite models.
    pub point_finite: bool,
    pub connected_parts: bool,
    pub nodes: usize,
    pub edges: usize,
    pub loops: usize,
    pub max_part_vertices: usize,
    pub max_part_edges: usize,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.parts_valid && self.h1 && self.h2 && self.h3 && self.honest && self.point_finite
    }
}

/// Evaluates the axioms; never fails.
pub fn verify_graph_decomposition(g: &Multigraph, d: &GraphDecomposition) -> DecompositionReport {
    let h = &d.model;
    let parts_valid = d.parts.len() == h.vertex_count()
        && d.parts.iter().all(|p| strictly_ascending(&p.vertices) && strictly_ascending(&p.edges) && p.is_subgraph_of(g));
    let mut report = DecompositionReport {
        parts_valid,
        h1: false,
        h2: false,
        h3: false,
        honest: false,
        point_finite: true,
        connected_parts: false,
        nodes: h.vertex_count(),
        edges: h.edge_count(),
        loops: h.edges().filter(|&f| h.is_loop(f)).count(),
        max_part_vertices: d.parts.iter().map(|p| p.vertices.len()).max().unwrap_or(0),
        max_part_edges: d.parts.iter().map(|p| p.edges.len()).max().unwrap_or(0),
    };
    if !parts_valid {
        return report;
    }
    let at_vertex: Vec<BitSet> = g.vertices().map(|v| d.nodes_at(v)).collect();
    let at_edge: Vec<BitSet> = g.edges().map(|e| d.nodes_at_edge(e)).collect();
    report.h1 = at_vertex.iter().chain(&at_edge).all(|s| !s.is_empty());
    report.h2 = at_vertex.iter().all(|s| spans_connected(h, s));
    report.h3 = at_edge.iter().all(|s| spans_connected(h, s));
    report.honest = h.edges().all(|f| {
        let (a, b) = h.ends(f);
        share_vertex(&d.parts[a], &d.parts[b])
    });
    report.connected_parts = d.parts.iter().all(|p| !p.vertices.is_empty() && p.is_connected(g));
    report
}

/// The dual `(G, (H_v))`: the decomposition of `H` modelled on `G` with
/// `H_v` the subgraph of `H` induced by the nodes whose parts contain `v`.
pub fn dual_decomposition(g: &Multigraph, d: &GraphDecomposition) -> Result<GraphDecomposition> {
    let report = verify_graph_decomposition(g, d);
    if !(report.parts_valid && report.h1 && report.h2) {
        return Err(Error::InvalidParameter("not a graph-decomposition"));
    }
    if !(report.honest && report.connected_parts) {
        return Err(Error::InvalidParameter("dual needs an honest decomposition into connected parts"));
    }
    let parts = g.vertices().map(|v| d.model.induced(&d.nodes_at(v))).collect();
    let dual = GraphDecomposition { model: g.clone(), parts };
    let r = verify_graph_decomposition(&d.model, &dual);
    if !(r.parts_valid && r.h1 && r.h2 && r.honest && r.connected_parts) {
        return Err(Error::Postcondition(format!("dual is not an honest decomposition into connected parts: {r:?}")));
    }
    Ok(dual)
}

fn vertex_union(g: &Multigraph, d: &GraphDecomposition, nodes: impl Iterator<Item = usize>) -> BitSet {
    let mut out = BitSet::new(g.vertex_count());
    for h in nodes {
        for &v in &d.parts[h].vertices {
            out.insert(v);
        }
    }
    out
}

/// The separation `{⋃_{h∈U} V(G_h), ⋃_{h∈W} V(G_h)}` induced by a
/// separation `{U, W}` of the node set, checked against the separator
/// formula with `F = E_H(U∖W, W∖U)`.
pub fn induce_separation_from_model(
    g: &Multigraph,
    d: &GraphDecomposition,
    u: &BitSet,
    w: &BitSet,
) -> Result<Separation> {
    let m = d.model.vertex_count();
    if u.capacity() != m || w.capacity() != m || u.union(w).count() != m {
        return Err(Error::NotASeparation);
    }
    let report = verify_graph_decomposition(g, d);
    if !(report.parts_valid && report.h1 && report.h2) {
        return Err(Error::InvalidParameter("not a graph-decomposition"));
    }
    let a = vertex_union(g, d, u.iter());
    let b = vertex_union(g, d, w.iter());
    let mut formula = vertex_union(g, d, u.intersection(w).iter());
    let (only_u, only_w) = (u.difference(w), w.difference(u));
    for f in d.model.edges() {
        let (x, y) = d.model.ends(f);
        if (only_u.contains(x) && only_w.contains(y)) || (only_u.contains(y) && only_w.contains(x)) {
            let vx = vertex_union(g, d, [x].into_iter());
            formula.union_with(&vx.intersection(&vertex_union(g, d, [y].into_iter())));
        }
    }
    let s = Separation::from_sides(g, a, b)
        .map_err(|_| Error::Postcondition("induced sides are not a separation".into()))?;
    if s.separator() != formula {
        return Err(Error::Postcondition("separator differs from the model formula".into()));
    }
    Ok(s)
}

fn image(p: &Subgraph, vertex_map: &[Vertex], edge_map: &[Edge]) -> Subgraph {
    let mut vertices: Vec<Vertex> = p.vertices.iter().map(|&v| vertex_map[v]).collect();
    let mut edges: Vec<Edge> = p.edges.iter().map(|&e| edge_map[e]).collect();
    vertices.sort_unstable();
    edges.sort_unstable();
    Subgraph { vertices, edges }
}

/// Node bijections `ψ` from the model of `d1` to that of `d2` with
/// `φ(G_h) = G′_{ψ(h)}` that preserve edge multiplicities between nodes,
/// up to `limit` of them.
pub fn part_correspondences(
    d1: &GraphDecomposition,
    d2: &GraphDecomposition,
    vertex_map: &[Vertex],
    edge_map: &[Edge],
    limit: usize,
) -> Vec<Vec<usize>> {
    let (h1, h2) = (&d1.model, &d2.model);
    if h1.vertex_count() != h2.vertex_count() || h1.edge_count() != h2.edge_count() {
        return Vec::new();
    }
    let mut by_part: BTreeMap<&Subgraph, Vec<usize>> = BTreeMap::new();
    for (h, p) in d2.parts.iter().enumerate() {
        by_part.entry(p).or_default().push(h);
    }
    let mut cands = Vec::with_capacity(d1.parts.len());
    for p in &d1.parts {
        match by_part.get(&image(p, vertex_map, edge_map)) {
            Some(c) => cands.push(c.clone()),
            None => return Vec::new(),
        }
    }
    let mut out = Vec::new();
    let mut psi = vec![usize::MAX; cands.len()];
    let mut used = vec![false; cands.len()];
    fn go(
        h1: &Multigraph,
        h2: &Multigraph,
        cands: &[Vec<usize>],
        i: usize,
        psi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
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
            psi[i] = c;
            let ok = (0..=i).all(|j| h1.edges_between(i, j).count() == h2.edges_between(c, psi[j]).count());
            if ok {
                used[c] = true;
                go(h1, h2, cands, i + 1, psi, used, out, limit);
                used[c] = false;
            }
        }
        psi[i] = usize::MAX;
    }
    go(h1, h2, &cands, 0, &mut psi, &mut used, &mut out, limit);
    out
}

/// The same parts on isomorphic models, matched by a model isomorphism.
pub fn decompositions_equivalent(g: &Multigraph, d1: &GraphDecomposition, d2: &GraphDecomposition) -> bool {
    let id = Isomorphism::identity(g);
    !part_correspondences(d1, d2, &id.vertex_map, &id.edge_map, 1).is_empty()
}

/// Pairs of automorphisms checked for composition compatibility.
const COMPOSITION_CHECKS: usize = 128;

/// Whether every listed automorphism `φ` of `g` permutes the parts
/// through a model automorphism `ψ`, with `φ ↦ ψ` compatible with
/// composition wherever the composite is also listed.
pub fn verify_canonicity(g: &Multigraph, d: &GraphDecomposition, autos: &[Isomorphism]) -> bool {
    if !verify_graph_decomposition(g, d).parts_valid {
        return false;
    }
    let mut psis = Vec::with_capacity(autos.len());
    let mut unique = Vec::with_capacity(autos.len());
    for phi in autos {
        let mut found = part_correspondences(d, d, &phi.vertex_map, &phi.edge_map, 2);
        if found.is_empty() {
            return false;
        }
        unique.push(found.len() == 1);
        psis.push(found.swap_remove(0));
    }
    let index: BTreeMap<(&[Vertex], &[Edge]), usize> =
        autos.iter().enumerate().map(|(i, a)| ((&a.vertex_map[..], &a.edge_map[..]), i)).collect();
    let limit = autos.len().min(COMPOSITION_CHECKS);
    for i in 0..limit {
        for j in 0..limit {
            let c = autos[i].compose(&autos[j]);
            let Some(&k) = index.get(&(&c.vertex_map[..], &c.edge_map[..])) else { continue };
            let composite: Vec<usize> = psis[j].iter().map(|&h| psis[i][h]).collect();
            let ok = if unique[k] {
                composite == psis[k]
            } else {
                d.parts.iter().enumerate().all(|(h, p)| image(p, &c.vertex_map, &c.edge_map) == d.parts[composite[h]])
            };
            if !ok {
                return false;
            }
        }
    }
    true
}
