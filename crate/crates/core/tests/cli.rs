use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use ordconflict::io::GraphDoc;
use ordconflict::verify::VerifyReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordconflict"))
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1, "one document: {text}");
    serde_json::from_str(&text).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn formula_prints_provenance() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "row3.json", r#"{"matrix":[[1,0,-1,0]],"p":2}"#);
    let out = run(&["formula", "--spec", s(&spec), "--what", "W", "--k", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v, serde_json::json!({"kind":"exact","value":2,"provenance":"table1.row3"}));
    let out = run(&["formula", "--spec", s(&spec), "--what", "Xcli", "--w", "3"]);
    assert_eq!(json(&out)["value"], 7);
    let out = run(&["formula", "--spec", s(&spec), "--what", "A"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conflict_lists_pairs() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.json", r#"{"vertices":[1,2,3],"edges":[[1,2],[1,3],[2,3]]}"#);
    let spec = file(&dir, "row3p1.json", r#"{"matrix":[[1,0,-1,0]],"p":1}"#);
    let out = run(&["conflict", "--graph", s(&g), "--spec", s(&spec)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["conflicts"].as_array().unwrap().len(), 2);
    let text = run(&["--output", "text", "conflict", "--graph", s(&g), "--spec", s(&spec)]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("2 conflict pairs"));
}

#[test]
fn solve_rejects_empty_edge_set() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "empty.json", r#"{"vertices":[1,2,3],"edges":[]}"#);
    let spec = file(&dir, "s.json", r#"{"matrix":[[1,0,-1,0]],"p":1}"#);
    let out = run(&["solve", "--graph", s(&g), "--spec", s(&spec), "--what", "alpha"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graph has no edges"));
    assert_eq!(json(&out)["error"], "invalid-input");
}

#[test]
fn solve_values_and_budget() {
    let dir = TempDir::new().unwrap();
    let vs: Vec<i64> = (1..=8).collect();
    let edges: Vec<[i64; 2]> = (1..=8).flat_map(|a| (a + 1..=8).map(move |b| [a, b])).collect();
    let doc = serde_json::json!({ "vertices": vs, "edges": edges }).to_string();
    let g = file(&dir, "k8.json", &doc);
    let spec = file(&dir, "s.json", r#"{"matrix":[[1,1,-1,-1]],"p":1}"#);
    let out = run(&["solve", "--graph", s(&g), "--spec", s(&spec), "--what", "omega"]);
    assert!(out.status.success());
    assert!(json(&out).is_u64());
    let out = run(&["solve", "--graph", s(&g), "--what", "chi-underlying"]);
    assert_eq!(json(&out), 8);
    let out = run(&["--budget-nodes", "1", "solve", "--graph", s(&g), "--spec", s(&spec), "--what", "chi"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "budget-exceeded");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "bad.json", r#"{"vertices":[1,1],"edges":[]}"#);
    let spec = file(&dir, "s.json", "{not json");
    assert_eq!(run(&["classify", "--spec", s(&spec)]).status.code(), Some(2));
    assert_eq!(run(&["param", "--graph", s(&g), "--what", "degeneracy"]).status.code(), Some(2));
    assert_eq!(run(&["param", "--graph", s(&g), "--what", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "table2", "--p-range", "3..1"]).status.code(), Some(2));
}

#[test]
fn classify_and_construct() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "s.json", r#"{"matrix":[[0,-1,0,1]],"p":2}"#);
    let out = run(&["classify", "--spec", s(&spec)]);
    let v = json(&out);
    assert_eq!(v["tag"], "table-row");
    assert_eq!(v["row"], 3);
    assert!(v["trace"].is_array());

    let out_path = dir.path().join("g.json");
    let out = run(&["construct", "--spec", s(&spec), "--k", "6", "--side", "W", "--out", s(&out_path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: GraphDoc = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let g = doc.to_graph().unwrap();
    assert!(g.is_complete() && g.order() == 6);
    let out = run(&["solve", "--graph", s(&out_path), "--spec", s(&spec), "--what", "omega"]);
    let f = run(&["formula", "--spec", s(&spec), "--what", "W", "--k", "6"]);
    assert_eq!(json(&out), json(&f)["value"]);
}

#[test]
fn param_ignores_positions() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4.json", r#"{"vertices":[0,5,9,30],"edges":[[0,5],[0,9],[0,30],[5,9],[5,30],[9,30]]}"#);
    let out = run(&["param", "--graph", s(&g), "--what", "page-number"]);
    assert_eq!(json(&out), 2);
    let out = run(&["param", "--graph", s(&g), "--what", "band-width"]);
    assert_eq!(json(&out), 3);
}

#[test]
fn verify_writes_reproducible_reports() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = run(&["verify", "--suite", "lemmas", "--seed", "9", "--out", s(path)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        let summary = json(&out);
        assert_eq!(summary["fail"], 0);
    }
    let load = |p: &Path| -> Vec<VerifyReport> {
        fs::read_to_string(p)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str::<VerifyReport>(l).unwrap().without_timing())
            .collect()
    };
    let (ra, rb) = (load(&a), load(&b));
    assert_eq!(ra.len(), 7);
    assert_eq!(ra, rb);

    let out = run(&["verify", "--suite", "table2", "--p-range", "-1..1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total"], 12 * 3 * 2);
    assert_eq!(v["reports"].as_array().unwrap().len(), 72);
}
