//! The `localdec` command line.
//!
//! Exit codes: 0 exact success, 1 verification failure, 2 input error,
//! 3 success resting on a certified truncation, 4 uncertified or out of
//! budget.

use crate::error::{Error, Result};
use crate::json::{
    verdict_str, CoverJson, DecompositionJson, GraphJson, Kind, PresentationJson, TanglesJson, TreeJson,
};
use crate::dot;
use clap::{Args, Parser, Subcommand};
use localdec_core::bitset::BitSet;
use localdec_core::graphdec::{induce_separation_from_model, r_global_decomposition, verify_graph_decomposition, PipelineOptions};
use localdec_core::grouppres::{deck_group_presentation, todd_coxeter, Enumeration, DEFAULT_COSET_LIMIT};
use localdec_core::localcover::{
    covering_condition_holds, lifts_separated, local_cover, local_group_extension, verify_ball_preservation,
    verify_cover_cycle_space, CoverOptions, LocalCover,
};
use localdec_core::multigraph::Multigraph;
use localdec_core::tangles::{canonical_nested_set, NestedOptions, Separation, Separators};
use localdec_core::treedecomp::{induce_tree_decomposition, verify_tree_decomposition};
use localdec_core::Verdict;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_HEURISTIC: u8 = 3;
pub const EXIT_UNCERTIFIED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "localdec", version, about = "Local covers, tangles and canonical graph-decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the r-local cover and its certificates.
    Cover(RunConfig),
    /// Present the deck group of the r-local cover and try to enumerate it.
    DeckGroup(RunConfig),
    /// Tangles of the input graph and the canonical nested set they induce.
    Tangles(RunConfig),
    /// The tree-decomposition induced by the canonical nested set.
    Tree(RunConfig),
    /// The decomposition displaying the r-global structure.
    Decompose(RunConfig),
    /// Re-run the verifiers on a stored artifact.
    Verify(RunConfig),
    /// The group presented by the short cycles of a labelled Cayley graph.
    GammaR(RunConfig),
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Input JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Locality parameter.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    pub r: usize,
    #[arg(long, default_value_t = 6, value_parser = positive)]
    pub max_tangle_order: usize,
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT, value_parser = positive)]
    pub coset_limit: usize,
    /// Ball radius for infinite covers; for `decompose`, the largest
    /// radius tried [default: 10, 12 for decompose].
    #[arg(long, value_parser = positive)]
    pub truncation_radius: Option<usize>,
    /// Output JSON file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Graphviz output file.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Edges carry generator labels, the first end being the tail.
    #[arg(long)]
    pub labelled: bool,
    /// Print a summary to standard error.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

impl RunConfig {
    fn cover_options(&self, default_radius: usize) -> CoverOptions {
        CoverOptions { coset_limit: self.coset_limit, truncation_radius: self.truncation_radius.unwrap_or(default_radius) }
    }

    fn say(&self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            eprintln!("{}", msg.as_ref());
        }
    }
}

/// Exit code for a failure.
pub fn exit_code(e: &Error) -> u8 {
    use localdec_core::Error as E;
    match e {
        Error::Io { .. } | Error::Json(_) | Error::Format(_) => EXIT_INPUT,
        Error::Core(c) => match c {
            E::Uncertified(_) | E::NotStable(_) | E::BudgetExceeded(_) => EXIT_UNCERTIFIED,
            E::Postcondition(_) | E::NotDeckCanonical | E::CrossingSeparations | E::ImproperSeparation => EXIT_VERIFY,
            _ => EXIT_INPUT,
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source })
}

fn emit<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &cfg.out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(cfg: &RunConfig) -> Result<Multigraph> {
    let json: GraphJson = serde_json::from_str(&read(&cfg.input)?)?;
    if cfg.labelled {
        return Ok(json.to_labelled()?.graph);
    }
    json.to_graph()
}

/// Parses the arguments and runs one command.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("localdec: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(command: &Command) -> Result<u8> {
    match command {
        Command::Cover(c) => cmd_cover(c),
        Command::DeckGroup(c) => cmd_deck_group(c),
        Command::Tangles(c) => cmd_tangles(c),
        Command::Tree(c) => cmd_tree(c),
        Command::Decompose(c) => cmd_decompose(c),
        Command::Verify(c) => cmd_verify(c),
        Command::GammaR(c) => cmd_gamma_r(c),
    }
}

pub fn cmd_cover(cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(cfg)?;
    if !g.is_connected() {
        return Err(localdec_core::Error::Disconnected.into());
    }
    let cov = local_cover(&g, cfg.r, cfg.cover_options(10))?;
    emit(cfg, &CoverJson::from_cover(&cov, cfg.r))?;
    Ok(match &cov {
        LocalCover::Finite(c) => {
            cfg.say(format!("finite cover: {} sheets, {} vertices", c.sheets(), c.cover.vertex_count()));
            EXIT_OK
        }
        LocalCover::Truncated(t) => {
            cfg.say(format!("truncated cover: ball of {} vertices, certified {}", t.ball.vertex_count(), t.is_certified()));
            if t.is_certified() {
                EXIT_HEURISTIC
            } else {
                EXIT_UNCERTIFIED
            }
        }
    })
}

#[derive(Serialize)]
struct DeckGroupJson {
    presentation: PresentationJson,
    /// The group order when coset enumeration completed.
    order: Option<usize>,
    abelian_free_rank: usize,
}

pub fn cmd_deck_group(cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(cfg)?;
    let deck = deck_group_presentation(&g, cfg.r, 0)?;
    let order = match todd_coxeter(&deck.presentation, cfg.coset_limit) {
        Enumeration::Complete(t) => Some(t.len()),
        Enumeration::Undecided(_) => None,
    };
    cfg.say(format!("deck group order: {order:?}"));
    emit(
        cfg,
        &DeckGroupJson {
            presentation: PresentationJson::from_presentation(&deck.presentation),
            order,
            abelian_free_rank: deck.presentation.abelian_free_rank(),
        },
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_tangles(cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(cfg)?;
    let n = canonical_nested_set(&g, &NestedOptions::new(cfg.max_tangle_order))?;
    let seps = Separators::new(&g, n.top_order)?;
    cfg.say(format!("{} maximal tangles, {} nested separations", n.tangles.len(), n.separations.len()));
    emit(cfg, &TanglesJson::new(&g, &seps, &n))?;
    Ok(EXIT_OK)
}

pub fn cmd_tree(cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(cfg)?;
    let n = canonical_nested_set(&g, &NestedOptions::new(cfg.max_tangle_order))?;
    let td = induce_tree_decomposition(&g, &n.separations)?;
    cfg.say(format!("tree of {} nodes", td.tree.vertex_count()));
    emit(cfg, &TreeJson::new(&g, &td))?;
    if let Some(p) = &cfg.dot {
        write(p, &dot::tree(&g, &td))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_decompose(cfg: &RunConfig) -> Result<u8> {
    let g = read_graph(cfg)?;
    let cover = cfg.cover_options(10);
    let opts = PipelineOptions {
        max_tangle_order: cfg.max_tangle_order,
        cover,
        max_radius: cfg.truncation_radius.unwrap_or(12),
        ..PipelineOptions::default()
    };
    let out = r_global_decomposition(&g, cfg.r, &opts)?;
    emit(cfg, &DecompositionJson::new(&g, &out))?;
    if let Some(p) = &cfg.dot {
        write(p, &dot::decomposition(&g, &out.decomposition, &out.edge_labels))?;
    }
    let h = &out.decomposition.model;
    cfg.say(format!(
        "H: {} nodes, {} edges; axioms {}; canonical {}",
        h.vertex_count(),
        h.edge_count(),
        out.report.all_pass(),
        verdict_str(out.canonical)
    ));
    Ok(if !out.report.all_pass() || out.canonical == Verdict::False {
        EXIT_VERIFY
    } else if out.provenance.is_heuristic() {
        EXIT_HEURISTIC
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct VerifyJson {
    kind: String,
    checks: BTreeMap<String, String>,
    all_pass: bool,
}

fn finish_verify(cfg: &RunConfig, kind: &str, checks: BTreeMap<String, Verdict>) -> Result<u8> {
    let all_pass = checks.values().all(|v| *v != Verdict::False);
    let report = VerifyJson {
        kind: kind.into(),
        checks: checks.iter().map(|(k, v)| (k.clone(), verdict_str(*v).into())).collect(),
        all_pass,
    };
    for (k, v) in &checks {
        cfg.say(format!("{k}: {}", verdict_str(*v)));
    }
    emit(cfg, &report)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

fn verify_cover(cfg: &RunConfig, text: &str) -> Result<u8> {
    let json: CoverJson = serde_json::from_str(text)?;
    let r = json.r;
    let truncation = json.truncation.clone();
    let stored = json.parts()?;
    let mut checks = BTreeMap::new();
    let interior: Vec<usize> = match &truncation {
        None => stored.cover.vertices().collect(),
        Some(t) => {
            if t.depth.len() != stored.cover.vertex_count() {
                return Err(Error::Format("depth list has the wrong length".into()));
            }
            stored.cover.vertices().filter(|&x| t.depth[x] < t.radius).collect()
        }
    };
    let covering = covering_condition_holds(
        &stored.base,
        &stored.cover,
        &stored.vertex_proj,
        &stored.edge_proj,
        &stored.edge_forward,
        interior.iter().copied(),
    );
    checks.insert("covering_condition".into(), Verdict::from(covering));
    checks.insert("connected".into(), Verdict::from(stored.cover.is_connected()));
    match &truncation {
        None => {
            let cov = stored.into_covering();
            // cycles of length at most r span the cover's cycle space
            checks.insert("cycle_space".into(), Verdict::from(verify_cover_cycle_space(&cov, r)));
            let lc = LocalCover::Finite(cov);
            checks.insert("ball_preservation".into(), verify_ball_preservation(&lc, r));
            let LocalCover::Finite(cov) = lc else { unreachable!() };
            // the r-local cover of G_r is G_r itself
            let idempotent = match local_cover(&cov.cover, r, cfg.cover_options(10)) {
                Ok(LocalCover::Finite(again)) => Verdict::from(again.sheets() == 1),
                Ok(LocalCover::Truncated(_)) => Verdict::False,
                Err(_) => Verdict::Undecided,
            };
            checks.insert("idempotent".into(), idempotent);
        }
        Some(t) => {
            let deep: Vec<usize> = stored.cover.vertices().filter(|&x| t.depth[x] + r <= t.radius).collect();
            let separated = deep.iter().all(|&x| lifts_separated(&stored.cover, &stored.vertex_proj, x, r));
            checks.insert("ball_preservation".into(), Verdict::from(separated));
            checks.insert("certified".into(), Verdict::from(t.certified));
        }
    }
    finish_verify(cfg, "cover", checks)
}

fn verify_decomposition(cfg: &RunConfig, text: &str) -> Result<u8> {
    let json: DecompositionJson = serde_json::from_str(text)?;
    let (g, d) = json.to_decomposition()?;
    let report = verify_graph_decomposition(&g, &d);
    let mut checks = BTreeMap::new();
    for (name, ok) in [
        ("parts_valid", report.parts_valid),
        ("h1", report.h1),
        ("h2", report.h2),
        ("h3", report.h3),
        ("honest", report.honest),
        ("point_finite", report.point_finite),
    ] {
        checks.insert(name.to_string(), Verdict::from(ok));
    }
    // each node against the rest
    let m = d.model.vertex_count();
    let separator_formula = if report.parts_valid && report.h1 && report.h2 && m >= 2 {
        Verdict::from((0..m).all(|h| {
            let u = BitSet::from_iter(m, [h]);
            induce_separation_from_model(&g, &d, &u, &u.complement()).is_ok()
        }))
    } else {
        Verdict::Undecided
    };
    checks.insert("separator_formula".into(), separator_formula);
    finish_verify(cfg, "decomposition", checks)
}

fn verify_tree(cfg: &RunConfig, text: &str) -> Result<u8> {
    let json: TreeJson = serde_json::from_str(text)?;
    let (g, td) = json.to_tree_decomposition()?;
    let r = verify_tree_decomposition(&g, &td);
    let mut checks = BTreeMap::new();
    for (name, ok) in [
        ("is_tree", r.is_tree),
        ("t1", r.t1),
        ("t2", r.t2),
        ("adhesion_sets", r.adhesion_sets),
        ("regular", r.regular),
        ("nonempty_parts", r.nonempty_parts),
    ] {
        checks.insert(name.to_string(), Verdict::from(ok));
    }
    finish_verify(cfg, "tree", checks)
}

fn verify_tangles(cfg: &RunConfig, text: &str) -> Result<u8> {
    let json: TanglesJson = serde_json::from_str(text)?;
    let g = json.graph.to_graph()?;
    let sides = json.separations(&g)?;
    let seps: Vec<Option<Separation>> = sides.into_iter().map(|(a, b)| Separation::from_sides(&g, a, b).ok()).collect();
    let mut checks = BTreeMap::new();
    checks.insert("separations".into(), Verdict::from(seps.iter().all(Option::is_some)));
    let valid: Vec<&Separation> = seps.iter().flatten().collect();
    let nested = valid.iter().enumerate().all(|(i, s)| valid[i + 1..].iter().all(|t| s.is_nested_with(t)));
    checks.insert("nested".into(), Verdict::from(nested));
    checks.insert("proper".into(), Verdict::from(valid.iter().all(|s| s.is_proper())));
    finish_verify(cfg, "tangles", checks)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<u8> {
    let text = read(&cfg.input)?;
    let kind: Kind = serde_json::from_str(&text)?;
    match kind.kind.as_str() {
        "cover" => verify_cover(cfg, &text),
        "decomposition" => verify_decomposition(cfg, &text),
        "tree" => verify_tree(cfg, &text),
        "tangles" => verify_tangles(cfg, &text),
        other => Err(Error::Format(format!("unknown artifact kind {other:?}"))),
    }
}

pub fn cmd_gamma_r(cfg: &RunConfig) -> Result<u8> {
    let json: GraphJson = serde_json::from_str(&read(&cfg.input)?)?;
    let cay = json.to_labelled()?;
    let p = local_group_extension(&cay, cfg.r)?;
    cfg.say(format!("{} generators, {} relators", p.generators.len(), p.relators.len()));
    emit(cfg, &PresentationJson::from_presentation(&p))?;
    Ok(EXIT_OK)
}
