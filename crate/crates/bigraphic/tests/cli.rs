//! End-to-end tests of the `bigraphic` binary: exit codes, JSON document
//! shapes, stdin/file input, edge-list output, and fuzz determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bigraphic"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = binary()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not one JSON document: {e}\n{}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

const COUNTEREXAMPLE_1: &str = r#"{"intervals":{"L1":[[2,3],[1,2]],"L2":[[1,2],[0,1]]}}"#;
const COUNTEREXAMPLE_2: &str = r#"{"intervals":{"L1":[[1,3],[2,3]],"L2":[[1,2],[0,2]]}}"#;

#[test]
fn check_bigraphic_holds_exits_zero() {
    let output = run_with_stdin(&["check-bigraphic"], r#"{"degrees":{"P":[2,2],"Q":[2,2]}}"#);
    assert_eq!(output.status.code(), Some(0));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "bigraphic");
}

#[test]
fn forcibly_sufficient_counterexample_1_document() {
    let output = run_with_stdin(&["forcibly-sufficient"], COUNTEREXAMPLE_1);
    assert_eq!(output.status.code(), Some(1));
    let doc = stdout_json(&output);
    assert_eq!(
        serde_json::to_string(&doc["violations"]).unwrap(),
        r#"[{"family":"(2)","k":1,"lhs":3,"rhs":1},{"family":"(2)","k":2,"lhs":5,"rhs":1}]"#
    );
}

#[test]
fn forcibly_brute_counterexample_2_witness() {
    let output = run_with_stdin(&["forcibly-brute"], COUNTEREXAMPLE_2);
    assert_eq!(output.status.code(), Some(1));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "not-forcibly");
    assert_eq!(doc["witness"]["P"], serde_json::json!([1, 3]));
    assert_eq!(doc["witness"]["Q"], serde_json::json!([2, 2]));
    assert_eq!(doc["witness"]["failing_r"], 2);
}

#[test]
fn forcibly_brute_counterexample_1_is_forcibly() {
    let output = run_with_stdin(&["forcibly-brute"], COUNTEREXAMPLE_1);
    assert_eq!(output.status.code(), Some(0));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "forcibly");
    assert_eq!(doc["pairs_examined"], 1);
}

#[test]
fn file_input_works() {
    let dir = std::env::temp_dir().join(format!("bigraphic-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("instance.json");
    std::fs::write(&path, COUNTEREXAMPLE_1).unwrap();
    let output = binary()
        .args(["forcibly-necessary", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "holds");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_exit_two_with_position() {
    let output = run_with_stdin(
        &["check-existence"],
        r#"{"intervals":{"L1":[[3,2]],"L2":[[0,0]]}}"#,
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("intervals.L1[0]"), "stderr: {stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let output = binary().arg("no-such-command").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_three() {
    let output = run_with_stdin(
        &["forcibly-brute", "--budget", "10"],
        r#"{"intervals":{"L1":[[0,5],[0,5],[0,5]],"L2":[[0,5],[0,5],[0,5]]}}"#,
    );
    assert_eq!(output.status.code(), Some(3));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "budget-exceeded");
}

#[test]
fn realize_json_then_edges_agree() {
    let instance = r#"{"degrees":{"P":[2,1],"Q":[2,1]}}"#;
    let json_out = run_with_stdin(&["realize"], instance);
    assert_eq!(json_out.status.code(), Some(0));
    let doc = stdout_json(&json_out);
    assert_eq!(
        doc["realization"]["biadjacency"],
        serde_json::json!([[1, 1], [1, 0]])
    );

    let edges_out = run_with_stdin(&["realize", "--edges"], instance);
    assert_eq!(edges_out.status.code(), Some(0));
    let text = String::from_utf8(edges_out.stdout).unwrap();
    let mut edges: Vec<(usize, usize)> = text
        .lines()
        .map(|line| {
            let mut parts = line.split_whitespace();
            (
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    edges.sort_unstable();
    assert_eq!(edges, vec![(0, 0), (0, 1), (1, 0)]);
}

#[test]
fn realize_rejects_non_bigraphic_pair() {
    let output = run_with_stdin(&["realize"], r#"{"degrees":{"P":[1,3],"Q":[2,2]}}"#);
    assert_eq!(output.status.code(), Some(1));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "not-bigraphic");
}

#[test]
fn forcibly_exact_not_applicable_status() {
    let output = run_with_stdin(&["forcibly-exact"], COUNTEREXAMPLE_2);
    assert_eq!(output.status.code(), Some(1));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "not-applicable");
    assert_eq!(doc["sums"]["a"], 3);
    assert_eq!(doc["sums"]["d"], 4);
}

#[test]
fn witness_subcommand_constructs_a_witness() {
    let output = run_with_stdin(
        &["witness"],
        r#"{"intervals":{"L1":[[2,3],[2,3]],"L2":[[0,5],[0,1]]}}"#,
    );
    assert_eq!(output.status.code(), Some(1));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "not-forcibly");
    assert_eq!(doc["witness"]["P"], serde_json::json!([3, 3]));
    assert_eq!(doc["witness"]["Q"], serde_json::json!([5, 1]));
    assert_eq!(doc["witness"]["construction_tag"], "1.1");
}

#[test]
fn validate_reports_ok_and_exits_zero() {
    let output = run_with_stdin(&["validate"], COUNTEREXAMPLE_2);
    assert_eq!(output.status.code(), Some(0));
    let doc = stdout_json(&output);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["record"]["findings"], serde_json::json!([]));
    assert_eq!(
        doc["record"]["ground_truth"]["forcibly"]["kind"],
        "not-forcibly"
    );
}

#[test]
fn text_format_renders_violations() {
    let output = run_with_stdin(
        &["--format", "text", "forcibly-sufficient"],
        COUNTEREXAMPLE_1,
    );
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("fails"));
    assert!(text.contains("(2) at k=1: 3 > 1"), "text: {text}");
}

#[test]
fn fuzz_workers_do_not_change_output() {
    let args_base = [
        "fuzz",
        "--seed",
        "3",
        "--count",
        "40",
        "--m-max",
        "3",
        "--n-max",
        "3",
        "--deg-max",
        "4",
        "--budget",
        "100000",
    ];
    let one = binary()
        .args(args_base)
        .args(["--workers", "1"])
        .output()
        .unwrap();
    let eight = binary()
        .args(args_base)
        .args(["--workers", "8"])
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(text.lines().count(), 41); // one line per instance + digest
    let digest: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(digest["command"], "fuzz");
    assert_eq!(digest["digest"]["findings_total"], 0);
}

#[test]
fn fuzz_exact_mode_instances_satisfy_hypotheses() {
    let output = binary()
        .args([
            "fuzz",
            "--seed",
            "1",
            "--count",
            "25",
            "--mode",
            "exact-sum-hypotheses",
            "--deg-max",
            "4",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    for line in text.lines().take(25) {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_ne!(record["t16"], "not-applicable", "line: {line}");
    }
}
