//! The JSON artifacts. Vertex and edge ids are the graph's names; lists
//! keep the graph's canonical order and maps are sorted by key, so equal
//! inputs serialise to identical bytes.

use crate::error::{Error, Result};
use localdec_core::bitset::BitSet;
use localdec_core::graphdec::{CoverMode, DecompositionReport, GlobalDecomposition, GraphDecomposition};
use localdec_core::grouppres::{FreeWord, Letter, Presentation};
use localdec_core::localcover::{Covering, LabelledGraph, LocalCover, TruncatedCover};
use localdec_core::multigraph::{Multigraph, Subgraph};
use localdec_core::tangles::{NestedSet, Separators};
use localdec_core::treedecomp::TreeDecomposition;
use localdec_core::Verdict;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    /// Equal ends make a loop. For labelled graphs the first end is the tail.
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GraphJson {
    pub fn from_graph(g: &Multigraph) -> Self {
        let edges = g
            .edges()
            .map(|e| {
                let (a, b) = g.ends(e);
                EdgeJson {
                    id: g.edge_name(e).into(),
                    ends: [g.vertex_name(a).into(), g.vertex_name(b).into()],
                    label: None,
                }
            })
            .collect();
        GraphJson { vertices: g.vertex_names().to_vec(), edges }
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }

    pub fn to_graph(&self) -> Result<Multigraph> {
        let index = self.index();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let end = |v: &String| index.get(v.as_str()).copied().ok_or_else(|| localdec_core::Error::UnknownVertex(v.clone()));
            edges.push((e.id.clone(), end(&e.ends[0])?, end(&e.ends[1])?));
        }
        Ok(Multigraph::new(self.vertices.clone(), edges)?)
    }

    /// Every edge must carry a label; generators are numbered by first
    /// appearance and the identity is the first vertex.
    pub fn to_labelled(&self) -> Result<LabelledGraph> {
        let graph = self.to_graph()?;
        let mut names: Vec<String> = Vec::new();
        let mut labels = Vec::with_capacity(self.edges.len());
        let mut tails = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let label = e
                .label
                .as_ref()
                .ok_or_else(|| localdec_core::Error::NotLabelled(format!("edge {} has no label", e.id)))?;
            let i = match names.iter().position(|n| n == label) {
                Some(i) => i,
                None => {
                    names.push(label.clone());
                    names.len() - 1
                }
            };
            labels.push(i);
            // ends are stored sorted, so the tail comes from the file
            tails.push(graph.vertex_by_name(&e.ends[0]).expect("checked by to_graph"));
        }
        if graph.vertex_count() == 0 {
            return Err(localdec_core::Error::NotLabelled("graph has no vertices".into()).into());
        }
        Ok(LabelledGraph::new(graph, labels, tails, names, 0)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

impl SubgraphJson {
    pub fn from_subgraph(g: &Multigraph, s: &Subgraph) -> Self {
        SubgraphJson {
            vertices: s.vertices.iter().map(|&v| g.vertex_name(v).into()).collect(),
            edges: s.edges.iter().map(|&e| g.edge_name(e).into()).collect(),
        }
    }

    /// Unknown ids are input errors; the lists are sorted into the host's
    /// order.
    pub fn to_subgraph(&self, g: &Multigraph) -> Result<Subgraph> {
        let mut vertices = self
            .vertices
            .iter()
            .map(|v| g.vertex_by_name(v).ok_or_else(|| Error::Format(format!("unknown vertex {v:?} in a part"))))
            .collect::<Result<Vec<_>>>()?;
        let edge_index: HashMap<&str, usize> = g.edges().map(|e| (g.edge_name(e), e)).collect();
        let mut edges = self
            .edges
            .iter()
            .map(|e| edge_index.get(e.as_str()).copied().ok_or_else(|| Error::Format(format!("unknown edge {e:?} in a part"))))
            .collect::<Result<Vec<_>>>()?;
        vertices.sort_unstable();
        edges.sort_unstable();
        Ok(Subgraph { vertices, edges })
    }
}

fn ids(g: &Multigraph, s: &BitSet) -> Vec<String> {
    s.iter().map(|v| g.vertex_name(v).into()).collect()
}

fn id_set(g: &Multigraph, names: &[String]) -> Result<BitSet> {
    let mut out = BitSet::new(g.vertex_count());
    for n in names {
        out.insert(g.vertex_by_name(n).ok_or_else(|| Error::Format(format!("unknown vertex {n:?}")))?);
    }
    Ok(out)
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Undecided => "undecided",
    }
}

/// Relators as lists of signed letters: `k` for generator `k−1`, `−k` for
/// its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
}

impl PresentationJson {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationJson {
            generators: p.generators.clone(),
            relators: p.relators.iter().map(|w| w.letters().iter().map(|l| l.signed()).collect()).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let relators = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&s| Letter::from_signed(s).ok_or_else(|| Error::Format("letter 0 in a relator".into())))
                    .collect::<Result<Vec<_>>>()
                    .map(FreeWord::from_letters)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(self.generators.clone(), relators)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckJson {
    pub order: usize,
    /// `table[a][b] = a·b`, present for small groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    pub radius: usize,
    pub complete: bool,
    /// Distance from the base lift, per ball vertex.
    pub depth: Vec<usize>,
    pub lift_separation: String,
    pub budget_stable: String,
    pub certified: bool,
}

/// Largest deck group whose multiplication table is written out.
pub const TABLE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub kind: String,
    pub r: usize,
    pub base: GraphJson,
    pub graph: GraphJson,
    pub projection: ProjectionJson,
    /// Whether each cover edge, read from its first end, maps to its
    /// image read from the image's first end.
    pub edge_forward: Vec<bool>,
    pub base_point: String,
    pub lift_point: String,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck: Option<DeckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationJson>,
}

fn projection(base: &Multigraph, cover: &Multigraph, vproj: &[usize], eproj: &[usize]) -> ProjectionJson {
    ProjectionJson {
        vertices: cover.vertices().map(|x| (cover.vertex_name(x).into(), base.vertex_name(vproj[x]).into())).collect(),
        edges: cover.edges().map(|f| (cover.edge_name(f).into(), base.edge_name(eproj[f]).into())).collect(),
    }
}

impl CoverJson {
    pub fn from_cover(cov: &LocalCover, r: usize) -> Self {
        match cov {
            LocalCover::Finite(c) => CoverJson::from_finite(c, r),
            LocalCover::Truncated(t) => CoverJson::from_truncated(t, r),
        }
    }

    pub fn from_finite(c: &Covering, r: usize) -> Self {
        let deck = c.deck.as_ref().map(|d| DeckJson {
            order: d.order(),
            table: (d.order() <= TABLE_LIMIT)
                .then(|| (0..d.order()).map(|a| (0..d.order()).map(|b| d.mul(a, b)).collect()).collect()),
        });
        CoverJson {
            kind: "cover".into(),
            r,
            base: GraphJson::from_graph(&c.base),
            graph: GraphJson::from_graph(&c.cover),
            projection: projection(&c.base, &c.cover, &c.vertex_proj, &c.edge_proj),
            edge_forward: c.edge_forward.clone(),
            base_point: c.base.vertex_name(c.base_point).into(),
            lift_point: c.cover.vertex_name(c.lift_point).into(),
            truncated: false,
            deck,
            truncation: None,
        }
    }

    pub fn from_truncated(t: &TruncatedCover, r: usize) -> Self {
        CoverJson {
            kind: "cover".into(),
            r,
            base: GraphJson::from_graph(&t.base),
            graph: GraphJson::from_graph(&t.ball),
            projection: projection(&t.base, &t.ball, &t.vertex_proj, &t.edge_proj),
            edge_forward: t.edge_forward.clone(),
            base_point: t.base.vertex_name(t.base_point).into(),
            lift_point: t.ball.vertex_name(0).into(),
            truncated: true,
            deck: None,
            truncation: Some(TruncationJson {
                radius: t.radius,
                complete: t.complete,
                depth: t.depth.clone(),
                lift_separation: verdict_str(t.certificates.lift_separation).into(),
                budget_stable: verdict_str(t.certificates.budget_stable).into(),
                certified: t.is_certified(),
            }),
        }
    }

    /// The stored graphs and index-based projections.
    pub fn parts(&self) -> Result<StoredCover> {
        let base = self.base.to_graph()?;
        let cover = self.graph.to_graph()?;
        let base_edges: HashMap<&str, usize> = base.edges().map(|e| (base.edge_name(e), e)).collect();
        let mut vertex_proj = Vec::with_capacity(cover.vertex_count());
        for x in cover.vertices() {
            let name = self.projection.vertices.get(cover.vertex_name(x)).ok_or_else(|| Error::Format(format!("vertex {} has no projection", cover.vertex_name(x))))?;
            vertex_proj.push(base.vertex_by_name(name).ok_or_else(|| Error::Format(format!("projection names unknown vertex {name:?}")))?);
        }
        let mut edge_proj = Vec::with_capacity(cover.edge_count());
        for f in cover.edges() {
            let name = self.projection.edges.get(cover.edge_name(f)).ok_or_else(|| Error::Format(format!("edge {} has no projection", cover.edge_name(f))))?;
            edge_proj.push(*base_edges.get(name.as_str()).ok_or_else(|| Error::Format(format!("projection names unknown edge {name:?}")))?);
        }
        if self.edge_forward.len() != cover.edge_count() {
            return Err(Error::Format("edge_forward has the wrong length".into()));
        }
        let base_point = base.vertex_by_name(&self.base_point).ok_or_else(|| Error::Format("unknown base point".into()))?;
        let lift_point = cover.vertex_by_name(&self.lift_point).ok_or_else(|| Error::Format("unknown lift point".into()))?;
        Ok(StoredCover { base, cover, vertex_proj, edge_proj, edge_forward: self.edge_forward.clone(), base_point, lift_point })
    }
}

/// A cover read back from JSON, without its deck action.
pub struct StoredCover {
    pub base: Multigraph,
    pub cover: Multigraph,
    pub vertex_proj: Vec<usize>,
    pub edge_proj: Vec<usize>,
    pub edge_forward: Vec<bool>,
    pub base_point: usize,
    pub lift_point: usize,
}

impl StoredCover {
    pub fn into_covering(self) -> Covering {
        Covering {
            base: self.base,
            cover: self.cover,
            vertex_proj: self.vertex_proj,
            edge_proj: self.edge_proj,
            edge_forward: self.edge_forward,
            base_point: self.base_point,
            lift_point: self.lift_point,
            deck: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideJson {
    pub separator: Vec<String>,
    /// The component of `G − X` on the big side.
    pub big: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleJson {
    pub order: usize,
    /// One entry per separator `X` with several components of `G − X`;
    /// the others carry only improper separations.
    pub sides: Vec<SideJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub order: usize,
    /// Pairs of tangles, by index, this member efficiently distinguishes.
    #[serde(default)]
    pub distinguishes: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TanglesJson {
    pub kind: String,
    pub graph: GraphJson,
    pub max_tangle_order: usize,
    pub top_order: usize,
    pub budget_capped: bool,
    pub tangles: Vec<TangleJson>,
    pub nested: Vec<SeparationJson>,
    pub automorphism_invariant: String,
}

impl TanglesJson {
    pub fn new(g: &Multigraph, seps: &Separators, n: &NestedSet) -> Self {
        let tangles = n
            .tangles
            .iter()
            .map(|t| TangleJson {
                order: t.order(),
                sides: t
                    .choices(seps)
                    .into_iter()
                    .map(|(x, big)| SideJson { separator: x.iter().map(|&v| g.vertex_name(v).into()).collect(), big: ids(g, &big) })
                    .collect(),
            })
            .collect();
        let nested = n
            .separations
            .iter()
            .zip(&n.tags)
            .map(|(s, tags)| {
                let (a, b) = s.sides();
                SeparationJson {
                    a: ids(g, a),
                    b: ids(g, b),
                    order: s.order(),
                    distinguishes: tags.iter().map(|&(i, j)| [i, j]).collect(),
                }
            })
            .collect();
        TanglesJson {
            kind: "tangles".into(),
            graph: GraphJson::from_graph(g),
            max_tangle_order: n.max_tangle_order,
            top_order: n.top_order,
            budget_capped: n.budget_capped,
            tangles,
            nested,
            automorphism_invariant: verdict_str(n.automorphism_invariant).into(),
        }
    }

    pub fn separations(&self, g: &Multigraph) -> Result<Vec<(BitSet, BitSet)>> {
        self.nested.iter().map(|s| Ok((id_set(g, &s.a)?, id_set(g, &s.b)?))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNodeJson {
    pub id: String,
    pub part: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdgeJson {
    pub id: String,
    pub a: String,
    pub b: String,
    pub adhesion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub kind: String,
    pub graph: GraphJson,
    pub nodes: Vec<TreeNodeJson>,
    pub edges: Vec<TreeEdgeJson>,
}

impl TreeJson {
    pub fn new(g: &Multigraph, td: &TreeDecomposition) -> Self {
        let t = &td.tree;
        TreeJson {
            kind: "tree".into(),
            graph: GraphJson::from_graph(g),
            nodes: t.vertices().map(|s| TreeNodeJson { id: t.vertex_name(s).into(), part: ids(g, &td.parts[s]) }).collect(),
            edges: t
                .edges()
                .map(|f| {
                    let (a, b) = t.ends(f);
                    TreeEdgeJson {
                        id: t.edge_name(f).into(),
                        a: t.vertex_name(a).into(),
                        b: t.vertex_name(b).into(),
                        adhesion: ids(g, &td.adhesion(f)),
                    }
                })
                .collect(),
        }
    }

    pub fn to_tree_decomposition(&self) -> Result<(Multigraph, TreeDecomposition)> {
        let g = self.graph.to_graph()?;
        let tree = GraphJson {
            vertices: self.nodes.iter().map(|n| n.id.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { id: e.id.clone(), ends: [e.a.clone(), e.b.clone()], label: None })
                .collect(),
        }
        .to_graph()?;
        let parts = self.nodes.iter().map(|n| id_set(&g, &n.part)).collect::<Result<Vec<_>>>()?;
        Ok((g, TreeDecomposition::new(tree, parts)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub parts_valid: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub honest: bool,
    pub point_finite: bool,
    pub connected_parts: bool,
    pub nodes: usize,
    pub edges: usize,
    pub loops: usize,
    pub max_part_vertices: usize,
    pub max_part_edges: usize,
    pub all_pass: bool,
}

impl From<&DecompositionReport> for ReportJson {
    fn from(r: &DecompositionReport) -> Self {
        ReportJson {
            parts_valid: r.parts_valid,
            h1: r.h1,
            h2: r.h2,
            h3: r.h3,
            honest: r.honest,
            point_finite: r.point_finite,
            connected_parts: r.connected_parts,
            nodes: r.nodes,
            edges: r.edges,
            loops: r.loops,
            max_part_vertices: r.max_part_vertices,
            max_part_edges: r.max_part_edges,
            all_pass: r.all_pass(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportsJson {
    pub decomposition: ReportJson,
    pub canonical: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsJson {
    pub max_tangle_order: usize,
    pub top_tangle_order: usize,
    pub budget_capped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub r: usize,
    pub cover_mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sheets: Option<usize>,
    /// Truncation radii tried; the last one was accepted.
    pub radii: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_at: Option<usize>,
    pub heuristic: bool,
    pub caps: CapsJson,
    pub maximal_tangles: usize,
    pub nested_separations: usize,
    pub tree_nodes: usize,
    pub rim_dropped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub kind: String,
    pub graph: GraphJson,
    #[serde(rename = "H")]
    pub model: GraphJson,
    pub parts: BTreeMap<String, SubgraphJson>,
    pub edge_labels: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports: Option<ReportsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceJson>,
}

impl DecompositionJson {
    pub fn new(g: &Multigraph, out: &GlobalDecomposition) -> Self {
        let d = &out.decomposition;
        let h = &d.model;
        let p = &out.provenance;
        let (cover_mode, sheets, stable_at) = match p.mode {
            CoverMode::Finite { sheets } => ("finite", Some(sheets), None),
            CoverMode::Truncated { radius, .. } => ("truncated", None, Some(radius)),
        };
        let mut json = DecompositionJson::bare(g, d);
        json.edge_labels = h.edges().map(|f| (h.edge_name(f).into(), out.edge_labels[f])).collect();
        json.reports = Some(ReportsJson { decomposition: (&out.report).into(), canonical: verdict_str(out.canonical).into() });
        json.provenance = Some(ProvenanceJson {
            r: p.r,
            cover_mode: cover_mode.into(),
            sheets,
            radii: p.radii.clone(),
            stable_at,
            heuristic: p.is_heuristic(),
            caps: CapsJson {
                max_tangle_order: p.max_tangle_order,
                top_tangle_order: p.top_tangle_order,
                budget_capped: p.budget_capped,
            },
            maximal_tangles: p.maximal_tangles,
            nested_separations: p.nested_separations,
            tree_nodes: p.tree_nodes,
            rim_dropped: p.rim_dropped,
        });
        json
    }

    /// Graph, model and parts only.
    pub fn bare(g: &Multigraph, d: &GraphDecomposition) -> Self {
        let h = &d.model;
        DecompositionJson {
            kind: "decomposition".into(),
            graph: GraphJson::from_graph(g),
            model: GraphJson::from_graph(h),
            parts: h.vertices().map(|n| (h.vertex_name(n).into(), SubgraphJson::from_subgraph(g, &d.parts[n]))).collect(),
            edge_labels: BTreeMap::new(),
            reports: None,
            provenance: None,
        }
    }

    pub fn to_decomposition(&self) -> Result<(Multigraph, GraphDecomposition)> {
        let g = self.graph.to_graph()?;
        let model = self.model.to_graph()?;
        let mut parts = Vec::with_capacity(model.vertex_count());
        for n in model.vertices() {
            let name = model.vertex_name(n);
            let part = self.parts.get(name).ok_or_else(|| Error::Format(format!("node {name} has no part")))?;
            parts.push(part.to_subgraph(&g)?);
        }
        if self.parts.len() != model.vertex_count() {
            return Err(Error::Format("parts name nodes outside the model".into()));
        }
        Ok((g, GraphDecomposition { model, parts }))
    }
}

/// The `kind` tag shared by every artifact.
#[derive(Deserialize)]
pub struct Kind {
    pub kind: String,
}
