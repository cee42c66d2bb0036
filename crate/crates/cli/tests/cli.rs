use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chromberge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn compute_single_edge_in_p() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.json", r#"{"n":2,"arcs":[[1,2]]}"#);
    let o = run(&["compute", "U", "--in", &edge, "--basis", "p"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"key": "1,1", "coeff": "1"}]));
    let o = run(&["compute", "rb-poly", "--in", &edge, "--out", "table"]);
    assert_eq!(stdout(&o).trim(), "m^2");
}

#[test]
fn compute_triangle_and_poset_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.json", r#"{"n":3,"edges":[[1,2],[1,3],[2,3]]}"#);
    let v: Value = serde_json::from_str(&stdout(&run(&["compute", "X", "--in", &k3, "--basis", "m"]))).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"key": "1,1,1", "coeff": "6"}]));
    // antichain: inc is K3, so X agrees with the triangle
    let anti = write(dir.path(), "anti.json", r#"{"n":3,"strict":[]}"#);
    let w: Value = serde_json::from_str(&stdout(&run(&["compute", "X", "--in", &anti]))).unwrap();
    assert_eq!(v, w);
    let y = run(&["compute", "Y", "--in", &k3, "--basis", "e"]);
    let y: Value = serde_json::from_str(&stdout(&y)).unwrap();
    assert_eq!(y["terms"], serde_json::json!([{"key": "123", "coeff": "1"}]));
    let f = run(&["compute", "U", "--in", &anti, "--basis", "F"]);
    assert!(f.status.success());
}

#[test]
fn compute_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"n":3,"arcs":[[1,2],[2,3],[3,1],[2,2]]}"#);
    let out = dir.path().join("u.json");
    let o = run(&["compute", "U", "--in", &x, "--basis", "s", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let parsed = chromberge::json::expansion_from_json(&text, false).unwrap();
    assert_eq!(chromberge::json::to_pretty(&parsed.doc()), text.trim_end());
}

#[test]
fn input_and_precondition_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n":3,"edges":[[0,2]]}"#);
    let o = run(&["compute", "X", "--in", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges"));
    let missing = write(dir.path(), "m.json", r#"{"n":3,"arcs":[[1,2]],"extra":1}"#);
    assert_eq!(run(&["compute", "U", "--in", &missing]).status.code(), Some(2));
    let loopy = write(dir.path(), "l.json", r#"{"n":2,"arcs":[[1,1]]}"#);
    assert_eq!(run(&["compute", "xi-x0", "--in", &loopy]).status.code(), Some(3));
    let bag = write(dir.path(), "bag.json", r#"{"n":3,"arcs":[[1,2]]}"#);
    assert_eq!(run(&["breakdown", "--in", &bag]).status.code(), Some(3));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "del-con-W", "--n", "9"]).status.code(), Some(3));
    assert_eq!(run(&["enumerate", "posets", "--n", "9"]).status.code(), Some(3));
    assert_eq!(run(&["compute", "X"]).status.code(), Some(2));
}

#[test]
fn verify_reports_are_stable() {
    let a = run(&["verify", "omega-bridge", "--n", "4"]);
    let b = run(&["--sequential", "verify", "omega-bridge", "--n", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().last().unwrap().ends_with("0 failures"));
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn enumerate_counts() {
    for (kind, n, count) in [("nuio-irreducible", "4", 5), ("posets", "3", 19), ("tournaments", "3", 8), ("bags", "5", 7), ("posets-iso", "4", 16)] {
        let o = run(&["enumerate", kind, "--n", n]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert_eq!(text.lines().last().unwrap(), format!("# count: {count}"), "{kind}");
        assert_eq!(text.lines().count(), count + 1);
    }
}

#[test]
fn breakdown_of_the_three_star() {
    let dir = tempfile::tempdir().unwrap();
    let d3 = write(dir.path(), "d3.json", r#"{"n":4,"arcs":[[1,2],[1,3],[1,4]]}"#);
    let v: Value = serde_json::from_str(&stdout(&run(&["breakdown", "--in", &d3, "--out", "json"]))).unwrap();
    assert_eq!(
        v["grouped"],
        serde_json::json!([{"lambda": "1,1,1,1", "coeff": -2}, {"lambda": "2,1,1", "coeff": 3}])
    );
    assert_eq!(v["raw"].as_array().unwrap().len(), 4);
}

#[test]
fn searches_succeed_even_with_findings() {
    let o = run(&["search", "e-negative-uio", "--n", "5"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["findings"].as_array().unwrap().is_empty());
    let o = run(&["search", "equal-U-nonisomorphic-posets", "--n", "4"]);
    assert!(o.status.success());
    let o = run(&["search", "equal-X-nonisomorphic-complete-multipartite", "--from", "1", "--n", "7"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["findings"].as_array().unwrap().is_empty());
}
