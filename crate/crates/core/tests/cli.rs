use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lclkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lclkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_reports_the_type() {
    let (code, out) = run(&["classify", &data("consistent_orientation.json")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["classification"]["producer"], "classifier");
    assert_eq!(v["classification"]["result"]["type"], "C");
    assert_eq!(v["classification"]["result"]["complexity"]["undirected_cycles"], "Θ(n)");
    assert!(v["problem"]["fingerprint"].is_string());
}

#[test]
fn classify_check_agrees() {
    let (code, out) = run(&["classify", &data("edge_two_coloring.json"), "--check", "40"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["oracle_check"]["agrees"], true);
    assert_eq!(v["oracle_check"]["producer"], "oracle");
}

#[test]
fn bad_input_exits_two() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["classify", "/nonexistent/problem.json"]).0, 2);
}

#[test]
fn solve_verifies_and_unsolvable_exits_three() {
    let (code, out) = run(&[
        "solve",
        &data("edge_three_coloring.json"),
        "--topology",
        "cycle",
        "--n",
        "300",
        "--undirected",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verification"]["ok"], true);
    assert_eq!(v["plan"]["result"]["strategy"], "MirrorFlexAnchor");
    assert!(v["trace"]["result"]["max_radius"].as_u64().unwrap() > 0);

    let (code, _) = run(&["solve", &data("edge_two_coloring.json"), "--topology", "cycle", "--n", "7"]);
    assert_eq!(code, 3);
}

#[test]
fn solve_on_a_tree() {
    let (code, out) = run(&["solve", &data("tree_three_coloring.json"), "--tree", &data("tree.json")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verification"]["ok"], true);
}

#[test]
fn verify_round_trip_and_violations() {
    let inst = scratch("cycle.json");
    std::fs::write(&inst, r#"{"topology": "cycle", "directed": true, "n": 6, "ids": [1, 2, 3, 4, 5, 6]}"#).unwrap();
    let lab = scratch("lab.json");
    let (code, _) = run(&[
        "solve",
        &data("edge_two_coloring.json"),
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        lab.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let args = ["verify", &data("edge_two_coloring.json"), "--instance", inst.to_str().unwrap(), "--labeling", lab.to_str().unwrap()];
    let (code, out) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verification"]["ok"], true);

    // give edge 0 the color of edge 1
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&lab).unwrap()).unwrap();
    doc["ports"][0] = doc["ports"][1].clone();
    std::fs::write(&lab, doc.to_string()).unwrap();
    let (code, out) = run(&args);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["verification"]["ok"], false);
}

#[test]
fn oracle_lists_lengths() {
    let (code, out) = run(&["oracle", &data("short_paths.json"), "--max-n", "10"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["paths_by_edges"]["solvable"], serde_json::json!([1, 2]));
    assert_eq!(v["cycles"]["solvable"], serde_json::json!([]));
}

#[test]
fn normalize_and_export_dot() {
    let (code, out) = run(&["normalize", &data("node_two_coloring.standard.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("__12"));
    let (code, out) = run(&["export-dot", &data("consistent_orientation.json"), "--view", "core"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
}
