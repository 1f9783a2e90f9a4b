use super::quotient::{quotient, truncated_quotient, Quotient};
use super::{decompositions_equivalent, verify_canonicity, verify_graph_decomposition, DecompositionReport, GraphDecomposition};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::localcover::{local_cover, CoverOptions, LocalCover, TruncatedCover};
use crate::multigraph::iso::{automorphism_generators, automorphisms, DEFAULT_BUDGET};
use crate::multigraph::Multigraph;
use crate::tangles::{canonical_nested_set, NestedOptions, NestedSet};
use crate::treedecomp::induce_tree_decomposition;
use crate::Verdict;
use alloc::format;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Tangles of the cover are considered up to this order.
    pub max_tangle_order: usize,
    pub cover: CoverOptions,
    /// Search-node budget for automorphism computations.
    pub automorphism_budget: usize,
    /// Largest truncation radius tried when the cover is infinite.
    pub max_radius: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_tangle_order: 6,
            cover: CoverOptions::default(),
            automorphism_budget: DEFAULT_BUDGET,
            max_radius: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverMode {
    Finite { sheets: usize },
    /// Heuristic: the quotient over the ball core agreed at `radius − 1`
    /// and `radius`.
    Truncated { radius: usize, ball_vertices: usize, core_vertices: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub r: usize,
    pub mode: CoverMode,
    /// The requested tangle-order cap.
    pub max_tangle_order: usize,
    /// The highest order with tangles found, at most the cap.
    pub top_tangle_order: usize,
    /// Tangle search stopped early on budget, so the effective cap is
    /// `top_tangle_order`.
    pub budget_capped: bool,
    pub maximal_tangles: usize,
    pub nested_separations: usize,
    pub tree_nodes: usize,
    pub rim_dropped: usize,
    /// Truncation radii tried, in order.
    pub radii: Vec<usize>,
}

impl Provenance {
    pub fn is_heuristic(&self) -> bool {
        matches!(self.mode, CoverMode::Truncated { .. })
    }
}

#[derive(Clone, Debug)]
pub struct GlobalDecomposition {
    pub decomposition: GraphDecomposition,
    /// The order `k_e` of the cover separation behind each model edge.
    pub edge_labels: Vec<usize>,
    pub report: DecompositionReport,
    pub canonical: Verdict,
    pub provenance: Provenance,
}

fn nested_options(opts: &PipelineOptions, interior: Option<BitSet>) -> NestedOptions {
    NestedOptions {
        max_tangle_order: opts.max_tangle_order,
        automorphism_budget: opts.automorphism_budget,
        interior,
        degrade_on_budget: true,
    }
}

/// Automorphism list (the whole group when small, else generators) run
/// through [`verify_canonicity`].
fn canonicity(g: &Multigraph, d: &GraphDecomposition, budget: usize) -> Verdict {
    if let Some(all) = automorphisms(g, budget, 256) {
        return Verdict::from(verify_canonicity(g, d, &all));
    }
    match automorphism_generators(g, budget) {
        Some(gens) => Verdict::from(verify_canonicity(g, d, &gens)),
        None => Verdict::Undecided,
    }
}

fn provenance(r: usize, mode: CoverMode, opts: &PipelineOptions, n: &NestedSet, tree_nodes: usize, radii: Vec<usize>) -> Provenance {
    Provenance {
        r,
        mode,
        max_tangle_order: opts.max_tangle_order,
        top_tangle_order: n.top_order,
        budget_capped: n.budget_capped,
        maximal_tangles: n.tangles.len(),
        nested_separations: n.separations.len(),
        tree_nodes,
        rim_dropped: n.rim_dropped,
        radii,
    }
}

fn finish(g: &Multigraph, q: Quotient, provenance: Provenance, budget: usize) -> GlobalDecomposition {
    let report = verify_graph_decomposition(g, &q.decomposition);
    let canonical = canonicity(g, &q.decomposition, budget);
    GlobalDecomposition { decomposition: q.decomposition, edge_labels: q.adhesion, report, canonical, provenance }
}

/// The decomposition of `g` displaying its `r`-global structure: the
/// canonical tree of tangles of the `r`-local cover, folded by the deck
/// group. On infinite covers the same runs on growing certified balls
/// until the core quotient agrees at two consecutive radii.
pub fn r_global_decomposition(g: &Multigraph, r: usize, opts: &PipelineOptions) -> Result<GlobalDecomposition> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if opts.max_tangle_order == 0 {
        return Err(Error::InvalidParameter("tangle order must be positive"));
    }
    match local_cover(g, r, opts.cover)? {
        LocalCover::Finite(cov) => {
            let n = canonical_nested_set(&cov.cover, &nested_options(opts, None))?;
            let td = induce_tree_decomposition(&cov.cover, &n.separations)?;
            let q = quotient(&cov, &td)?;
            let mode = CoverMode::Finite { sheets: cov.sheets() };
            let prov = provenance(r, mode, opts, &n, td.tree.vertex_count(), Vec::new());
            Ok(finish(g, q, prov, opts.automorphism_budget))
        }
        LocalCover::Truncated(_) => truncated(g, r, opts),
    }
}

struct Attempt {
    q: Quotient,
    n: NestedSet,
    tree_nodes: usize,
}

fn attempt(tc: &TruncatedCover, r: usize, opts: &PipelineOptions) -> Result<Attempt> {
    let b = &tc.ball;
    let core = BitSet::from_iter(b.vertex_count(), b.vertices().filter(|&x| tc.depth[x] + r <= tc.radius));
    let n = canonical_nested_set(b, &nested_options(opts, Some(core)))?;
    let td = induce_tree_decomposition(b, &n.separations)?;
    let q = truncated_quotient(tc, &td, r)?;
    Ok(Attempt { q, n, tree_nodes: td.tree.vertex_count() })
}

fn truncated(g: &Multigraph, r: usize, opts: &PipelineOptions) -> Result<GlobalDecomposition> {
    let mut radii = Vec::new();
    let mut certified_any = false;
    let mut previous: Option<Attempt> = None;
    for radius in r + 2..=opts.max_radius {
        radii.push(radius);
        let cover = CoverOptions { truncation_radius: radius, ..opts.cover };
        let LocalCover::Truncated(tc) = local_cover(g, r, cover)? else {
            return Err(Error::Postcondition("cover mode changed with the truncation radius".into()));
        };
        if !tc.is_certified() {
            previous = None;
            continue;
        }
        certified_any = true;
        let current = attempt(&tc, r, opts)?;
        if !verify_graph_decomposition(g, &current.q.decomposition).all_pass() {
            previous = None;
            continue;
        }
        if let Some(prev) = &previous {
            let mut l1 = prev.q.adhesion.clone();
            let mut l2 = current.q.adhesion.clone();
            l1.sort_unstable();
            l2.sort_unstable();
            if l1 == l2 && decompositions_equivalent(g, &prev.q.decomposition, &current.q.decomposition) {
                let core_vertices = tc.ball.vertices().filter(|&x| tc.depth[x] + r <= radius).count();
                let mode = CoverMode::Truncated { radius, ball_vertices: tc.ball.vertex_count(), core_vertices };
                let prov = provenance(r, mode, opts, &current.n, current.tree_nodes, radii);
                return Ok(finish(g, current.q, prov, opts.automorphism_budget));
            }
        }
        previous = Some(current);
    }
    let span = format!("radii {}..={}", r + 2, opts.max_radius);
    if certified_any {
        Err(Error::NotStable(format!("core quotients never agreed at consecutive radii within {span}")))
    } else {
        Err(Error::Uncertified(format!("no certified truncation within {span}")))
    }
}
