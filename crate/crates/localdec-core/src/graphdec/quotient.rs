use super::{verify_graph_decomposition, GraphDecomposition};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::localcover::{cayley_graph, Covering, TruncatedCover};
use crate::multigraph::{ball, Edge, Multigraph, Subgraph, UnionFind, Vertex};
use crate::treedecomp::{induced_tree_action, verify_tree_decomposition, TreeDecomposition};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// A decomposition of the base obtained from an orbit graph of a
/// tree-decomposition of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub decomposition: GraphDecomposition,
    /// Adhesion `|V_t ∩ V_t′|` of each model edge.
    pub adhesion: Vec<usize>,
    /// The tree nodes in each model node, ascending.
    pub node_orbits: Vec<Vec<Vertex>>,
    pub edge_orbits: Vec<Vec<Edge>>,
}

/// `p(C[X])`.
fn project(cover: &Multigraph, vertex_proj: &[Vertex], edge_proj: &[Edge], x: &BitSet) -> Subgraph {
    let sub = cover.induced(x);
    let vertices: BTreeSet<Vertex> = sub.vertices.iter().map(|&v| vertex_proj[v]).collect();
    let edges: BTreeSet<Edge> = sub.edges.iter().map(|&e| edge_proj[e]).collect();
    Subgraph { vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect() }
}

struct Projection<'a> {
    cover: &'a Multigraph,
    vertex_proj: &'a [Vertex],
    edge_proj: &'a [Edge],
}

/// Orbit graph on the given tree nodes and edges, with `G_h` projected
/// from every member of `h` and required to agree.
fn assemble(
    p: &Projection,
    td: &TreeDecomposition,
    nodes: &[Vertex],
    edges: &[Edge],
    node_uf: &mut UnionFind,
    edge_uf: &mut UnionFind,
) -> Result<Quotient> {
    let t = &td.tree;
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut node_orbits: Vec<Vec<Vertex>> = Vec::new();
    let mut node_class = vec![usize::MAX; t.vertex_count()];
    for &s in nodes {
        let root = node_uf.find(s);
        let next = node_orbits.len();
        let c = *class_of_root.entry(root).or_insert(next);
        if c == next {
            node_orbits.push(Vec::new());
        }
        node_orbits[c].push(s);
        node_class[s] = c;
    }
    let mut parts = Vec::with_capacity(node_orbits.len());
    for orbit in &node_orbits {
        let part = project(p.cover, p.vertex_proj, p.edge_proj, &td.parts[orbit[0]]);
        for &s in &orbit[1..] {
            if project(p.cover, p.vertex_proj, p.edge_proj, &td.parts[s]) != part {
                return Err(Error::Postcondition(format!("projected parts differ within the orbit of node {}", orbit[0])));
            }
        }
        parts.push(part);
    }
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edge_orbits: Vec<Vec<Edge>> = Vec::new();
    for &f in edges {
        let root = edge_uf.find(f);
        let next = edge_orbits.len();
        let c = *class_of_root.entry(root).or_insert(next);
        if c == next {
            edge_orbits.push(Vec::new());
        }
        edge_orbits[c].push(f);
    }
    let mut named = Vec::with_capacity(edge_orbits.len());
    for (i, orbit) in edge_orbits.iter().enumerate() {
        let (a, b) = t.ends(orbit[0]);
        if node_class[a] == usize::MAX || node_class[b] == usize::MAX {
            return Err(Error::Postcondition("model edge leaves the chosen nodes".into()));
        }
        named.push((format!("f{i}"), node_class[a], node_class[b]));
    }
    let names = (0..node_orbits.len()).map(|i| format!("h{i}")).collect();
    let model = Multigraph::new(names, named)?;
    let adhesion = edge_orbits.iter().map(|o| td.adhesion(o[0]).count()).collect();
    Ok(Quotient { decomposition: GraphDecomposition { model, parts }, adhesion, node_orbits, edge_orbits })
}

/// The orbit graph `H = T/𝒟` with parts `G_h = p(C[V_t])` for `t ∈ h`.
pub fn quotient_decomposition(cov: &Covering, td: &TreeDecomposition) -> Result<GraphDecomposition> {
    Ok(quotient(cov, td)?.decomposition)
}

/// [`quotient_decomposition`] with the orbits and adhesion labels.
pub fn quotient(cov: &Covering, td: &TreeDecomposition) -> Result<Quotient> {
    let group = cov.deck.as_ref().ok_or(Error::InvalidParameter("cover carries no deck action"))?;
    if !verify_tree_decomposition(&cov.cover, td).all_pass() {
        return Err(Error::InvalidParameter("not a regular tree-decomposition of the cover"));
    }
    let t = &td.tree;
    let mut node_uf = UnionFind::new(t.vertex_count());
    let mut edge_uf = UnionFind::new(t.edge_count());
    for h in 0..group.order() {
        let vmap = cov.deck_vertex_map(h).expect("derived cover");
        let psi = induced_tree_action(td, &vmap)?;
        for s in t.vertices() {
            node_uf.union(s, psi[s]);
        }
        for f in t.edges() {
            let (a, b) = t.ends(f);
            let img = t.edges_between(psi[a], psi[b]).next().ok_or(Error::NotDeckCanonical)?;
            edge_uf.union(f, img);
        }
    }
    let p = Projection { cover: &cov.cover, vertex_proj: &cov.vertex_proj, edge_proj: &cov.edge_proj };
    let nodes: Vec<Vertex> = t.vertices().collect();
    let edges: Vec<Edge> = t.edges().collect();
    let q = assemble(&p, td, &nodes, &edges, &mut node_uf, &mut edge_uf)?;
    let r = verify_graph_decomposition(&cov.base, &q.decomposition);
    if !r.all_pass() {
        return Err(Error::Postcondition(format!("quotient fails the decomposition axioms: {r:?}")));
    }
    Ok(q)
}

/// The quotient over the core of a truncated ball, the vertices at depth
/// at most `radius − r`. Deck maps come from the lifts of the base point
/// inside the ball; a core node is identified with its image when that
/// image is again a core node. The result is not checked here.
pub fn truncated_quotient(tc: &TruncatedCover, td: &TreeDecomposition, r: usize) -> Result<Quotient> {
    let b = &tc.ball;
    let t = &td.tree;
    if td.parts.len() != t.vertex_count() || td.parts.iter().any(|p| p.capacity() != b.vertex_count()) {
        return Err(Error::InvalidParameter("tree-decomposition is not of the ball"));
    }
    let core = BitSet::from_iter(b.vertex_count(), b.vertices().filter(|&x| tc.depth[x] + r <= tc.radius));
    let core_nodes = BitSet::from_iter(t.vertex_count(), t.vertices().filter(|&s| td.parts[s].is_subset(&core)));
    let core_edges: Vec<Edge> = t
        .edges()
        .filter(|&f| {
            let (a, c) = t.ends(f);
            core_nodes.contains(a) && core_nodes.contains(c)
        })
        .collect();
    let mut by_part: BTreeMap<&BitSet, Vec<Vertex>> = BTreeMap::new();
    for (s, p) in td.parts.iter().enumerate() {
        by_part.entry(p).or_default().push(s);
    }
    let lifts: BTreeSet<usize> =
        b.vertices().filter(|&x| tc.coords[x].0 == tc.base_point).map(|x| tc.coords[x].1).collect();
    let mut node_uf = UnionFind::new(t.vertex_count());
    let mut edge_uf = UnionFind::new(t.edge_count());
    for &c in lifts.iter().filter(|&&c| c != 0) {
        let vm = tc.deck_vertex_map(c);
        let psi: Vec<Option<Vertex>> = t
            .vertices()
            .map(|s| {
                if !core_nodes.contains(s) {
                    return None;
                }
                let img: Option<Vec<Vertex>> = td.parts[s].iter().map(|x| vm[x]).collect();
                let img = BitSet::from_iter(b.vertex_count(), img?);
                match by_part.get(&img).map(Vec::as_slice) {
                    Some(&[u]) if core_nodes.contains(u) => Some(u),
                    _ => None,
                }
            })
            .collect();
        for s in t.vertices() {
            if let Some(u) = psi[s] {
                node_uf.union(s, u);
            }
        }
        for &f in &core_edges {
            let (a, d) = t.ends(f);
            if let (Some(a2), Some(d2)) = (psi[a], psi[d]) {
                if let Some(img) = t.edges_between(a2, d2).next() {
                    edge_uf.union(f, img);
                }
            }
        }
    }
    let p = Projection { cover: b, vertex_proj: &tc.vertex_proj, edge_proj: &tc.edge_proj };
    assemble(&p, td, &core_nodes.to_vec(), &core_edges, &mut node_uf, &mut edge_uf)
}

/// The decomposition of a finite cover modelled on `Cay(𝒟, S)` with parts
/// `C_φ = B(φ(x̂₀), |G|)` and `S = ⋃_v S_v`, where
/// `S_v = {φ⁻¹φ′ : v̂₀ ∈ C_φ ∩ C_φ′}` for the lift `v̂₀` in the identity
/// sheet. Returns `S` in ascending order.
pub fn cayley_model_decomposition(cov: &Covering) -> Result<(Vec<usize>, GraphDecomposition)> {
    let group = cov.deck.as_ref().ok_or(Error::InvalidParameter("cover carries no finite deck group"))?;
    let n = cov.base.vertex_count();
    let rho = 2 * n;
    let e = group.identity();
    let centre = |phi: usize| group.mul(phi, e) * n + cov.base_point;
    let parts: Vec<Subgraph> = (0..group.order()).map(|phi| ball(&cov.cover, &[centre(phi)], rho)).collect();
    let mut s = BTreeSet::new();
    for v in cov.base.vertices() {
        let lift = e * n + v;
        let holders: Vec<usize> = (0..group.order()).filter(|&phi| parts[phi].contains_vertex(lift)).collect();
        for &a in &holders {
            for &b in &holders {
                s.insert(group.mul(group.inverse(a), b));
            }
        }
    }
    let s: Vec<usize> = s.into_iter().collect();
    let generators: Vec<_> = s.iter().map(|&x| (format!("s{x}"), x)).collect();
    let model = cayley_graph(group, &generators).graph;
    let d = GraphDecomposition { model, parts };
    let r = verify_graph_decomposition(&cov.cover, &d);
    if !(r.all_pass() && r.connected_parts) {
        return Err(Error::Postcondition(format!("Cayley model decomposition fails: {r:?}")));
    }
    // deck transformations are ball isometries, so one sheet suffices
    let bound = cov.base.vertices().map(|v| ball(&cov.cover, &[e * n + v], rho).vertices.len()).max().unwrap_or(0);
    if r.max_part_vertices > bound {
        return Err(Error::Postcondition("Cayley model part exceeds the ball bound".into()));
    }
    Ok((s, d))
}
