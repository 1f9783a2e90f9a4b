//! Graphviz renderings for inspection. JSON is the machine format; these
//! are for looking at.

use localdec_core::graphdec::GraphDecomposition;
use localdec_core::multigraph::Multigraph;
use localdec_core::treedecomp::TreeDecomposition;
use std::fmt::Write;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn names<'a>(g: &'a Multigraph, vs: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<&'a str> = vs.into_iter().map(|v| g.vertex_name(v)).collect();
    parts.join(" ")
}

/// The model `H`, each node's part as its tooltip and each edge labelled
/// with its adhesion order `k_e`.
pub fn decomposition(g: &Multigraph, d: &GraphDecomposition, labels: &[usize]) -> String {
    let h = &d.model;
    let mut out = String::from("graph H {\n  node [shape=circle];\n");
    for n in h.vertices() {
        let p = &d.parts[n];
        let tip = format!("{} vertices, {} edges: {}", p.vertices.len(), p.edges.len(), names(g, p.vertices.iter().copied()));
        let _ = writeln!(out, "  {} [tooltip={}];", quote(h.vertex_name(n)), quote(&tip));
    }
    for f in h.edges() {
        let (a, b) = h.ends(f);
        let label = labels.get(f).map(|k| format!(" [label={}]", quote(&k.to_string()))).unwrap_or_default();
        let _ = writeln!(out, "  {} -- {}{};", quote(h.vertex_name(a)), quote(h.vertex_name(b)), label);
    }
    out.push_str("}\n");
    out
}

/// The decomposition tree with parts as node labels and adhesion orders
/// on the edges.
pub fn tree(g: &Multigraph, td: &TreeDecomposition) -> String {
    let t = &td.tree;
    let mut out = String::from("graph T {\n  node [shape=box];\n");
    for s in t.vertices() {
        let label = format!("{}\n{}", t.vertex_name(s), names(g, td.parts[s].iter()));
        let _ = writeln!(out, "  {} [label={}];", quote(t.vertex_name(s)), quote(&label));
    }
    for f in t.edges() {
        let (a, b) = t.ends(f);
        let k = td.adhesion(f).count();
        let _ = writeln!(out, "  {} -- {} [label={}];", quote(t.vertex_name(a)), quote(t.vertex_name(b)), quote(&k.to_string()));
    }
    out.push_str("}\n");
    out
}
