use std::path::Path;
use std::process::{Command, Output};

use revkit::gate::tsg_rows;

fn revkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revkit"))
        .args(args)
        .output()
        .expect("run revkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = revkit(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn gate_entries(path: &str) -> usize {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["gates"].as_array().unwrap().len()
}

#[test]
fn build_writes_expected_gate_counts() {
    let dir = tempfile::tempdir().unwrap();
    let r4 = build(dir.path(), "r4.json", &["--arch", "ripple", "--width", "4"]);
    assert_eq!(gate_entries(&r4), 4);
    let s8 = build(dir.path(), "s8.json", &["--arch", "skip", "--width", "8", "--block", "4"]);
    assert_eq!(gate_entries(&s8), 16);
}

#[test]
fn build_rejects_non_dividing_block() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.json");
    let o = revkit(&["build", "--arch", "skip", "--width", "6", "--block", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("block must divide width"));
    assert!(!out.exists());
}

#[test]
fn table_of_single_tsg_matches_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tsg.json");
    std::fs::write(
        &path,
        r#"{
  "schema_version": 1,
  "name": "tsg",
  "num_primary_inputs": 4,
  "gates": [{"id": "t", "gate": "TSG", "inputs": [{"input": 0}, {"input": 1}, {"input": 2}, {"input": 3}]}],
  "primary_outputs": [{"port": {"gate": "t", "index": 0}}, {"port": {"gate": "t", "index": 1}},
                      {"port": {"gate": "t", "index": 2}}, {"port": {"gate": "t", "index": 3}}],
  "metadata": {"width": null, "architecture": "custom", "block": null}
}"#,
    )
    .unwrap();
    let o = revkit(&["table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let expected: String = tsg_rows()
        .iter()
        .map(|(i, o)| format!("{i} {o}\n"))
        .collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn verify_sim_metrics_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let r4 = build(dir.path(), "r4.json", &["--arch", "ripple", "--width", "4"]);
    let o = revkit(&["verify", &r4, "--width", "4", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("512/512 ok"), "{}", stdout(&o));

    let o = revkit(&["verify", &r4, "--width", "4", "--random", "500", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed 3"));

    let o = revkit(&["verify", &r4, "--width", "5"]);
    assert_eq!(o.status.code(), Some(2));

    let fa = build(dir.path(), "fa.json", &["--arch", "full-adder"]);
    let o = revkit(&["sim", &fa, "--inputs", "000"]);
    assert_eq!(stdout(&o), "00\n");
    let o = revkit(&["sim", &fa, "--inputs", "110", "--verbose"]);
    assert_eq!(stdout(&o), "01\ngarbage fa0.0 = 1\ngarbage fa0.1 = 0\n");
    assert_eq!(revkit(&["sim", &fa, "--inputs", "11"]).status.code(), Some(2));
    assert_eq!(revkit(&["sim", &fa, "--inputs", "1x0"]).status.code(), Some(2));

    let o = revkit(&["metrics", &fa]);
    assert!(stdout(&o).contains("gates: 1\ngarbage outputs: 2\nconstant inputs: 1\n"));

    let a = revkit(&["export-dot", &r4]);
    let b = revkit(&["export-dot", &r4]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph"));
}

#[test]
fn verify_reports_counterexample_for_broken_adder() {
    let dir = tempfile::tempdir().unwrap();
    let r2 = build(dir.path(), "r2.json", &["--arch", "ripple", "--width", "2"]);
    // Swap the two sum outputs.
    let text = std::fs::read_to_string(&r2).unwrap();
    let broken = text
        .replacen("\"fa0\",\n        \"index\": 2", "\"TMP\",\n        \"index\": 2", 1)
        .replacen("\"fa1\",\n        \"index\": 2", "\"fa0\",\n        \"index\": 2", 1)
        .replacen("\"TMP\",\n        \"index\": 2", "\"fa1\",\n        \"index\": 2", 1);
    assert_ne!(broken, text);
    std::fs::write(&r2, broken).unwrap();
    let o = revkit(&["verify", &r2, "--width", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first counterexample"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.json");
    std::fs::write(&p, "{not json").unwrap();
    assert_eq!(revkit(&["metrics", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(revkit(&["metrics", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(revkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn report_passes_for_generated_and_fails_for_tampered() {
    let o = revkit(&["report", "--arch", "skip", "--width", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("8 (2N)") && text.contains("12 (3N)"), "{text}");
    assert!(text.contains("24 (6N)") && text.contains("48 (12N)"), "{text}");

    let o = revkit(&["report", "--arch", "full-adder", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);

    let dir = tempfile::tempdir().unwrap();
    let r5 = build(dir.path(), "r5.json", &["--arch", "ripple", "--width", "5"]);
    let o = revkit(&["report", "--arch", "ripple", "--width", "4", "--netlist", &r5]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DISCREPANCY"));
}
