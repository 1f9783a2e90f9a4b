use super::Covering;
use crate::error::{Error, Result};
use crate::grouppres::{todd_coxeter, FiniteGroup, FreeWord, Letter, Presentation};
use crate::multigraph::{ball, enumerate_short_cycles, Edge, Multigraph, OrientedEdge, Vertex, UNREACHABLE};
use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// A graph whose edges carry generator labels and a direction: edge `f`
/// runs from `tails[f]` to its other end and stands for `tail · s` with
/// `s = labels[f]`. A loop's forward traversal is its labelled direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Multigraph,
    pub labels: Vec<usize>,
    pub tails: Vec<Vertex>,
    pub generator_names: Vec<String>,
    pub identity: Vertex,
}

impl LabelledGraph {
    pub fn new(
        graph: Multigraph,
        labels: Vec<usize>,
        tails: Vec<Vertex>,
        generator_names: Vec<String>,
        identity: Vertex,
    ) -> Result<Self> {
        let m = graph.edge_count();
        if labels.len() != m || tails.len() != m || identity >= graph.vertex_count() {
            return Err(Error::NotLabelled("label or tail list has the wrong length".into()));
        }
        for f in graph.edges() {
            let (a, b) = graph.ends(f);
            if labels[f] >= generator_names.len() {
                return Err(Error::NotLabelled(format!("edge {} has an unknown label", graph.edge_name(f))));
            }
            if tails[f] != a && tails[f] != b {
                return Err(Error::NotLabelled(format!("tail of {} is not an end", graph.edge_name(f))));
            }
        }
        let lg = LabelledGraph { graph, labels, tails, generator_names, identity };
        // at most one edge in and out per label at every vertex
        for v in lg.graph.vertices() {
            let mut outs = BTreeSet::new();
            let mut ins = BTreeSet::new();
            for &f in lg.graph.incident(v) {
                let fresh_out = lg.tails[f] != v || outs.insert(lg.labels[f]);
                let fresh_in = lg.head(f) != v || ins.insert(lg.labels[f]);
                if !fresh_out || !fresh_in {
                    return Err(Error::NotLabelled(format!("label repeated at {}", lg.graph.vertex_name(v))));
                }
            }
        }
        Ok(lg)
    }

    pub fn head(&self, f: Edge) -> Vertex {
        self.graph.other_end(f, self.tails[f])
    }

    /// The traversal of `f` in its labelled direction.
    pub fn labelled_step(&self, f: Edge) -> OrientedEdge {
        if self.graph.is_loop(f) {
            OrientedEdge::new(f, true)
        } else {
            OrientedEdge::leaving(&self.graph, f, self.tails[f])
        }
    }

    /// The letter read along a traversal.
    pub fn letter(&self, s: OrientedEdge) -> Letter {
        Letter::new(self.labels[s.edge], s != self.labelled_step(s.edge))
    }

    /// The neighbour `v · l`, if present.
    pub fn step(&self, v: Vertex, l: Letter) -> Option<(OrientedEdge, Vertex)> {
        self.graph.incident(v).iter().find_map(|&f| {
            if self.labels[f] != l.generator() {
                return None;
            }
            let fwd = self.labelled_step(f);
            if !l.is_inverse() && self.tails[f] == v {
                Some((fwd, self.head(f)))
            } else if l.is_inverse() && self.head(f) == v {
                Some((fwd.reverse(), self.tails[f]))
            } else {
                None
            }
        })
    }

    pub fn trace(&self, v: Vertex, w: &FreeWord) -> Option<Vertex> {
        w.letters().iter().try_fold(v, |x, &l| self.step(x, l).map(|(_, y)| y))
    }

    fn is_complete_at(&self, v: Vertex) -> bool {
        (0..2 * self.generator_names.len()).all(|c| self.step(v, Letter::from_column(c)).is_some())
    }
}

/// `Cay(Γ, S)` with vertex `g` for each element and edge `(g, s)` from
/// `g` to `g·s`, in element-major order.
pub fn cayley_graph(group: &FiniteGroup, generators: &[(String, usize)]) -> LabelledGraph {
    let n = group.order();
    let names = (0..n).map(|g| format!("g{g}")).collect();
    let mut edges = Vec::with_capacity(n * generators.len());
    let (mut labels, mut tails) = (Vec::new(), Vec::new());
    for g in 0..n {
        for (i, (name, s)) in generators.iter().enumerate() {
            edges.push((format!("g{g}.{name}"), g, group.mul(g, *s)));
            labels.push(i);
            tails.push(g);
        }
    }
    let graph = Multigraph::new(names, edges).expect("generated names are unique");
    let generator_names = generators.iter().map(|(n, _)| n.clone()).collect();
    LabelledGraph { graph, labels, tails, generator_names, identity: group.identity() }
}

/// `⟨S | R′⟩` with `R′` the words read once around each cycle of length
/// at most `r` through the identity, one word per cycle and sense, kept
/// up to inversion.
pub fn local_group_extension(cay: &LabelledGraph, r: usize) -> Result<Presentation> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1"));
    }
    let g = &cay.graph;
    let dist = g.distances_from([cay.identity]);
    if g.vertices().any(|v| dist[v] != UNREACHABLE && dist[v] <= r / 2 && !cay.is_complete_at(v)) {
        return Err(Error::BallTooSmall);
    }
    let near = ball(g, &[cay.identity], r);
    let local = near.to_multigraph(g);
    let id = near.vertices.binary_search(&cay.identity).expect("centre lies in its ball");
    let mut relators = BTreeSet::new();
    for cycle in enumerate_short_cycles(&local, r) {
        if cycle.vertices.binary_search(&id).is_err() {
            continue;
        }
        let once = cycle.once_around(&local);
        let verts = once.vertices(&local);
        let k = verts.iter().position(|&v| v == id).expect("cycle passes the identity");
        let word = FreeWord::from_letters(
            once.steps[k..]
                .iter()
                .chain(&once.steps[..k])
                .map(|s| cay.letter(OrientedEdge::new(near.edges[s.edge], s.forward))),
        );
        let inv = word.inverse();
        relators.insert(if word <= inv { word } else { inv });
    }
    Presentation::new(cay.generator_names.clone(), relators.into_iter().collect())
}

/// The covering `Cay(Γ_r, S) → cay` of a finite labelled Cayley graph,
/// or `None` when `Γ_r` is not found finite within `coset_limit`.
pub fn gamma_r_cover(cay: &LabelledGraph, r: usize, coset_limit: usize) -> Result<Option<Covering>> {
    let p = local_group_extension(cay, r)?;
    if cay.graph.vertices().any(|v| !cay.is_complete_at(v)) {
        return Err(Error::NotLabelled("the base must be a complete Cayley graph".into()));
    }
    let crate::grouppres::Enumeration::Complete(t) = todd_coxeter(&p, coset_limit) else {
        return Ok(None);
    };
    let group = FiniteGroup::from_table(&t)?;
    let gens: Vec<(String, usize)> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), group.element_of(&FreeWord::letter(Letter::new(i, false)))))
        .collect();
    let up = cayley_graph(&group, &gens);
    let vertex_proj: Vec<Vertex> = (0..group.order())
        .map(|x| cay.trace(cay.identity, group.word(x)).ok_or(Error::NotLabelled("incomplete base".into())))
        .collect::<Result<_>>()?;
    let mut edge_proj = Vec::with_capacity(up.graph.edge_count());
    let mut edge_forward = Vec::with_capacity(up.graph.edge_count());
    for f in up.graph.edges() {
        let (step, _) = cay.step(vertex_proj[up.tails[f]], Letter::new(up.labels[f], false)).expect("complete base");
        edge_proj.push(step.edge);
        edge_forward.push(up.labelled_step(f).forward == step.forward);
    }
    let c = Covering {
        base: cay.graph.clone(),
        cover: up.graph,
        vertex_proj,
        edge_proj,
        edge_forward,
        base_point: cay.identity,
        lift_point: 0,
        deck: None,
    };
    if !c.covering_condition() {
        return Err(Error::Postcondition("Cayley cover violates the covering condition".into()));
    }
    Ok(Some(c))
}

/// Whether some isomorphism of cover graphs commutes with both
/// projections. Tries each vertex over the base point as the image of
/// `c1.lift_point` and extends by unique dart lifting.
pub fn covering_equivalence(c1: &Covering, c2: &Covering) -> Result<bool> {
    let same_base = c1.base.vertex_count() == c2.base.vertex_count()
        && c1.base.edge_count() == c2.base.edge_count()
        && c1.base.edges().all(|e| c1.base.ends(e) == c2.base.ends(e));
    if !same_base {
        return Err(Error::InvalidParameter("coverings of different graphs"));
    }
    if c1.cover.vertex_count() != c2.cover.vertex_count() || c1.cover.edge_count() != c2.cover.edge_count() {
        return Ok(false);
    }
    let x = c1.lift_point;
    let darts1: Vec<_> = c1.cover.vertices().map(|v| c1.darts_at(v)).collect();
    let darts2: Vec<_> = c2.cover.vertices().map(|v| c2.darts_at(v)).collect();
    'candidates: for y in c2.fibre(c1.vertex_proj[x]) {
        let mut vmap = vec![UNREACHABLE; c1.cover.vertex_count()];
        let mut emap = vec![UNREACHABLE; c1.cover.edge_count()];
        let mut hit = vec![false; c2.cover.vertex_count()];
        vmap[x] = y;
        hit[y] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for d in &darts1[u] {
                let Some(d2) = darts2[vmap[u]].iter().find(|d2| d2.base == d.base) else {
                    continue 'candidates;
                };
                let f2 = d2.step.edge;
                if emap[d.step.edge] == UNREACHABLE {
                    emap[d.step.edge] = f2;
                } else if emap[d.step.edge] != f2 {
                    continue 'candidates;
                }
                if vmap[d.head] == UNREACHABLE {
                    if hit[d2.head] {
                        continue 'candidates;
                    }
                    vmap[d.head] = d2.head;
                    hit[d2.head] = true;
                    queue.push_back(d.head);
                } else if vmap[d.head] != d2.head {
                    continue 'candidates;
                }
            }
        }
        if vmap.iter().all(|&v| v != UNREACHABLE) {
            let mut used = vec![false; c2.cover.edge_count()];
            if emap.iter().all(|&f| f != UNREACHABLE && !core::mem::replace(&mut used[f], true)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
