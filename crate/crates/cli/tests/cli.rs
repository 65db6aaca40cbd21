use std::fs;
use std::process::{Command, Output};

fn sombor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sombor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_small_internal_sequence() {
    let out = sombor(&["verify", "--internal", "3 2 2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("labeled trees: 12\n"));
    assert!(text.contains("unlabeled trees: 2\n"));
    assert!(text.ends_with(
        "min 14.845516 attained by greedy: yes; max 14.994602 attained by alternating greedy: yes\n"
    ));
}

#[test]
fn verify_structured_record() {
    let out = sombor(&["verify", "3 2 2 1 1 1", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["sequence"], serde_json::json!([3, 2, 2, 1, 1, 1]));
    assert_eq!(record["labeled_count"], 12);
    assert_eq!(record["greedy_attains_min"], true);
    assert_eq!(record["alt_greedy_attains_max"], true);
    let min = record["min_value"].as_f64().unwrap();
    assert!((min - (2.0 * 13f64.sqrt() + 10f64.sqrt() + 2.0 * 5f64.sqrt())).abs() < 1e-12);
}

#[test]
fn condition_for_minus_sombor() {
    let out = sombor(&["condition", "--f", "minus_sombor", "--grid", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("closed form agrees: yes\n"));
    assert!(text.ends_with("holds: yes, strict: yes\n"));
}

#[test]
fn condition_reports_strictness_failure() {
    let out = sombor(&["condition", "--index", "sum", "--grid", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("strict witness: x=2 y=1 a=2 b=1"));
    assert!(text.ends_with("holds: yes, strict: no\n"));
}

#[test]
fn greedy_dot_and_edges() {
    let dot = sombor(&["greedy", "--internal", "5 4 3 3 3 2 2 2", "--format", "dot"]);
    assert_eq!(dot.status.code(), Some(0));
    let text = stdout(&dot);
    assert!(text.starts_with("// greedy tree: sombor "));
    assert!(text.contains("graph tree {"));
    assert!(text.contains("0 [label=\"0 (d=5)\"];"));

    let edges = sombor(&["greedy", "--internal", "5 4 3 3 3 2 2 2"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("greedy.txt");
    fs::write(&path, stdout(&edges)).unwrap();
    let index = sombor(&["index", path.to_str().unwrap()]);
    assert_eq!(index.status.code(), Some(0));
    let summary = stdout(&edges).lines().next().unwrap().to_string();
    let value = summary.rsplit(' ').next().unwrap();
    assert_eq!(stdout(&index), format!("sombor: {value}\n"));
}

#[test]
fn altgreedy_all_variants() {
    let out = sombor(&[
        "altgreedy",
        "--internal",
        "5 4 3 3 3 2 2 2",
        "--all",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(records.len() >= 3);
    for r in &records {
        assert_eq!(r["trace"]["steps"].as_array().unwrap().len(), 4);
        assert_eq!(r["trace"]["joins"].as_array().unwrap().len(), 3);
    }
    let one = sombor(&["altgreedy", "--internal", "3 3", "--format", "text"]);
    assert!(stdout(&one).starts_with("alternating greedy tree 1/1\n  sequence: 3 3 1 1 1 1\n"));
}

#[test]
fn sweep_is_deterministic_across_jobs() {
    let a = sombor(&["sweep", "--n-max", "8", "--jobs", "1"]);
    let b = sombor(&["sweep", "--n-max", "8", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("sequences: 30; greedy failures: 0; alternating failures: 0\n"));

    let s = sombor(&["sweep", "--n-max", "5", "--format", "structured"]);
    let lines: Vec<serde_json::Value> = stdout(&s)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1 + 1 + 2 + 3 + 1);
    assert_eq!(lines.last().unwrap()["summary"]["greedy_failures"], 0);
}

#[test]
fn switch_scan() {
    let greedy = sombor(&["switch-scan", "--internal", "3 2 2"]);
    assert_eq!(greedy.status.code(), Some(0));
    assert!(stdout(&greedy).ends_with("local minimum: yes\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.txt");
    fs::write(&path, "0 1\n1 2\n2 3\n0 4\n0 5\n").unwrap();
    let chain = sombor(&["switch-scan", "--tree", path.to_str().unwrap()]);
    assert_eq!(chain.status.code(), Some(1));
    assert!(stdout(&chain).contains("improving switch: "));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(sombor(&["verify", "3 3 1 1"]).status.code(), Some(2));
    assert_eq!(sombor(&["greedy", "3 2 1"]).status.code(), Some(2));
    assert_eq!(
        sombor(&["verify", "--internal", "3 1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sombor(&["condition", "--index", "abc"]).status.code(),
        Some(2)
    );
    assert_eq!(sombor(&["condition", "--grid", "1"]).status.code(), Some(2));
    assert_eq!(sombor(&["sweep", "--n-max", "1"]).status.code(), Some(2));
    assert_eq!(
        sombor(&["index", "/nonexistent/tree.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(sombor(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exit_code() {
    let out = sombor(&["verify", "--internal", "5 4 3 3 3 2 2 2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("18162144000"));
    let small_cap = sombor(&["verify", "3 2 2 1 1 1", "--cap", "11"]);
    assert_eq!(small_cap.status.code(), Some(3));
}

#[test]
fn single_vertex_sequence() {
    let out = sombor(&["greedy", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "# greedy tree: sombor 0.000000\nn=1\n");
}
