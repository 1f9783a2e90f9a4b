mod common;

use common::{complete, cyclic_cayley, k5s, write_graph, write_json};
use localdec::json::{CoverJson, DecompositionJson, EdgeJson, GraphJson, PresentationJson, ProjectionJson};
use localdec_core::multigraph::Multigraph;
use serde_json::Value;
use std::path::Path;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn localdec(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_localdec")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", run.stdout))
}

#[test]
fn cover_of_k4_is_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k4.json", &complete(4));
    let run = localdec(&["cover", "--input", p(&input), "--r", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["kind"], "cover");
    assert_eq!(v["truncated"], false);
    assert_eq!(v["deck"]["order"], 1);
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn cover_of_short_cycle_is_truncated_and_certified() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "c5.json", &common::cycle(5));
    let run = localdec(&["cover", "--input", p(&input), "--r", "4", "--truncation-radius", "10"]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["truncation"]["certified"], true);
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 21);
}

#[test]
fn stored_cover_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, g, r) in [("k4", complete(4), "3"), ("c5", common::cycle(5), "4")] {
        let input = write_graph(dir.path(), &format!("{name}.json"), &g);
        let stored = dir.path().join(format!("{name}-cover.json"));
        localdec(&["cover", "--input", p(&input), "--r", r, "--out", p(&stored)]);
        let run = localdec(&["verify", "--input", p(&stored)]);
        assert_eq!(run.code, 0, "{name}: {}", run.stdout);
        assert_eq!(json(&run)["all_pass"], true);
    }
}

#[test]
fn disconnected_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]);
    let input = write_graph(dir.path(), "two.json", &g);
    for cmd in ["cover", "decompose"] {
        let run = localdec(&[cmd, "--input", p(&input)]);
        assert_eq!(run.code, 2, "{cmd}");
        assert!(run.stderr.contains("not connected"), "{}", run.stderr);
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [\"a\"], \"edges\": [{\"id\": \"e\", \"ends\": [\"a\", \"b\"]}]}").unwrap();
    assert_eq!(localdec(&["cover", "--input", p(&path)]).code, 2);
    assert_eq!(localdec(&["cover", "--input", p(&dir.path().join("missing.json"))]).code, 2);
    assert_eq!(localdec(&["cover", "--input", p(&path), "--r", "0"]).code, 2);
}

#[test]
fn decompose_k5_is_one_node() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5.json", &complete(5));
    let run = localdec(&["decompose", "--input", p(&input), "--r", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["H"]["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(v["H"]["edges"].as_array().unwrap().len(), 0);
    assert_eq!(v["reports"]["decomposition"]["all_pass"], true);
    assert_eq!(v["provenance"]["cover_mode"], "finite");
}

#[test]
fn decompose_two_k5s_is_an_edge() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5k5.json", &k5s(2, false));
    let run = localdec(&["decompose", "--input", p(&input), "--r", "9"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["H"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["H"]["edges"].as_array().unwrap().len(), 1);
    let labels: Vec<u64> = v["edge_labels"].as_object().unwrap().values().map(|k| k.as_u64().unwrap()).collect();
    assert_eq!(labels, [1]);
    for part in v["parts"].as_object().unwrap().values() {
        assert_eq!(part["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(part["edges"].as_array().unwrap().len(), 10);
    }
    assert_eq!(v["reports"]["canonical"], "true");
}

#[test]
fn decompose_necklace_writes_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "necklace.json", &k5s(4, true));
    let dot = dir.path().join("h.dot");
    let run = localdec(&["decompose", "--input", p(&input), "--r", "3", "--dot", p(&dot)]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["provenance"]["heuristic"], true);
    assert_eq!(v["H"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["H"]["edges"].as_array().unwrap().len(), 4);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph H {"));
    assert_eq!(text.matches(" -- ").count(), 4);
}

#[test]
fn decompose_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5k5.json", &k5s(2, false));
    let a = localdec(&["decompose", "--input", p(&input), "--r", "9"]);
    let b = localdec(&["decompose", "--input", p(&input), "--r", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let c = localdec(&["tangles", "--input", p(&input)]);
    let d = localdec(&["tangles", "--input", p(&input)]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_catches_tampered_part() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5k5.json", &k5s(2, false));
    let stored = dir.path().join("dec.json");
    assert_eq!(localdec(&["decompose", "--input", p(&input), "--r", "9", "--out", p(&stored)]).code, 0);
    let good = localdec(&["verify", "--input", p(&stored)]);
    assert_eq!(good.code, 0, "{}", good.stdout);
    assert_eq!(json(&good)["checks"]["separator_formula"], "true");

    let mut d: DecompositionJson = serde_json::from_str(&std::fs::read_to_string(&stored).unwrap()).unwrap();
    let part = d.parts.values_mut().next().unwrap();
    part.edges.pop();
    let tampered = write_json(dir.path(), "tampered.json", &d);
    let bad = localdec(&["verify", "--input", p(&tampered)]);
    assert_eq!(bad.code, 1);
    let v = json(&bad);
    assert_eq!(v["checks"]["h1"], "false");
    assert_eq!(v["all_pass"], false);
}

/// The 12-cycle over `C6` stored as if it were the 6-local cover: its
/// cycle space is not spanned by cycles of length at most 6.
#[test]
fn verify_rejects_cover_that_is_not_local() {
    let base = common::cycle(6);
    let cover = common::cycle(12);
    let vproj: Vec<usize> = cover.vertices().map(|x| x % 6).collect();
    let eproj: Vec<usize> = cover.edges().map(|f| f % 6).collect();
    let forward: Vec<bool> = cover.edges().map(|f| vproj[cover.ends(f).0] == base.ends(eproj[f]).0).collect();
    let json_cover = CoverJson {
        kind: "cover".into(),
        r: 6,
        base: GraphJson::from_graph(&base),
        graph: GraphJson::from_graph(&cover),
        projection: ProjectionJson {
            vertices: cover.vertices().map(|x| (cover.vertex_name(x).into(), base.vertex_name(vproj[x]).into())).collect(),
            edges: cover.edges().map(|f| (cover.edge_name(f).into(), base.edge_name(eproj[f]).into())).collect(),
        },
        edge_forward: forward,
        base_point: "v0".into(),
        lift_point: "v0".into(),
        truncated: false,
        deck: None,
        truncation: None,
    };
    let dir = tempfile::tempdir().unwrap();
    let stored = write_json(dir.path(), "c12.json", &json_cover);
    let run = localdec(&["verify", "--input", p(&stored)]);
    assert_eq!(run.code, 1, "{}", run.stdout);
    let v = json(&run);
    assert_eq!(v["checks"]["covering_condition"], "true");
    assert_eq!(v["checks"]["cycle_space"], "false");
}

#[test]
fn verify_tree_and_tangles_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5k5k5.json", &k5s(3, false));
    for cmd in ["tree", "tangles"] {
        let stored = dir.path().join(format!("{cmd}.json"));
        assert_eq!(localdec(&[cmd, "--input", p(&input), "--out", p(&stored)]).code, 0);
        let run = localdec(&["verify", "--input", p(&stored)]);
        assert_eq!(run.code, 0, "{cmd}: {}", run.stdout);
        assert_eq!(json(&run)["kind"], cmd);
    }
    let tangles: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("tangles.json")).unwrap()).unwrap();
    assert_eq!(tangles["tangles"].as_array().unwrap().len(), 3);
    assert_eq!(tangles["nested"].as_array().unwrap().len(), 2);
}

#[test]
fn unknown_artifact_kind_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, "{\"kind\": \"banana\"}").unwrap();
    assert_eq!(localdec(&["verify", "--input", p(&path)]).code, 2);
}

#[test]
fn gamma_r_of_cyclic_group() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_json(dir.path(), "z5.json", &cyclic_cayley(5));
    let run = localdec(&["gamma-r", "--input", p(&input), "--r", "5"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let pres: PresentationJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(pres.generators, ["s"]);
    assert_eq!(pres.relators, [vec![1; 5]]);

    let run = localdec(&["gamma-r", "--input", p(&input), "--r", "4"]);
    let pres: PresentationJson = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(pres.generators, ["s"]);
    assert!(pres.relators.is_empty());
}

#[test]
fn gamma_r_needs_labels() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = cyclic_cayley(5);
    g.edges[2] = EdgeJson { label: None, ..g.edges[2].clone() };
    let input = write_json(dir.path(), "z5.json", &g);
    let run = localdec(&["gamma-r", "--input", p(&input), "--r", "5"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("label"), "{}", run.stderr);
}

#[test]
fn deck_group_of_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "c5.json", &common::cycle(5));
    let v = json(&localdec(&["deck-group", "--input", p(&input), "--r", "4"]));
    assert_eq!(v["abelian_free_rank"], 1);
    assert!(v["order"].is_null());
    let v = json(&localdec(&["deck-group", "--input", p(&input), "--r", "5"]));
    assert_eq!(v["order"], 1);
}
