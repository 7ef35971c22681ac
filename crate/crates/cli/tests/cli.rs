use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rgw(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rgw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn piped_circulant_has_rainbow_girth_four() {
    let generated = rgw(&["generate", "circulant", "--n", "7"], None);
    assert!(generated.status.success());
    let solved = rgw(&["solve", "--kind", "rainbow"], Some(&generated.stdout));
    assert_eq!(solved.status.code(), Some(0));
    assert!(stdout(&solved).contains("length: 4\n"), "{}", stdout(&solved));
}

#[test]
fn stream_and_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c9.rcg");
    let path = path.to_str().unwrap();
    assert!(rgw(&["generate", "circulant", "--n", "9", "--out", path], None).status.success());
    let streamed = rgw(&["generate", "circulant", "--n", "9"], None).stdout;
    assert_eq!(std::fs::read(path).unwrap(), streamed);
    let from_file = rgw(&["solve", "--kind", "rainbow", "--json", path], None);
    let from_pipe = rgw(&["solve", "--kind", "rainbow", "--json", "-"], Some(&streamed));
    assert_eq!(from_file.stdout, from_pipe.stdout);
    let v: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(v["length"], 5);
    assert_eq!(v["certificate"]["kind"], "rainbow");
    assert_eq!(v["certificate"]["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn k5_pairings_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = rgw(&["verify", "--family", "k5-pairings", "--json", report.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("k5-pairings: 945 instances, 0 failures"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["family"], "k5-pairings");
    assert_eq!(v["instances"], 945);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn exhausted_budgets_fail_the_suite_with_counterexamples() {
    let out = rgw(&["verify", "--family", "main-random", "--count", "20", "--budget-nodes", "1"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("counterexample at instance 0"));
    assert!(stdout(&out).contains("\nrcg "));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = rgw(&["solve", "--kind", "rainbow", "missing.rcg"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.rcg"));
}

#[test]
fn malformed_instances_are_input_errors() {
    let out = rgw(&["solve", "--kind", "rainbow"], Some(b"rcg 2 1 1\n1 1 0\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
    let out = rgw(&["solve", "--kind", "rainbow"], Some(b"rcg 2 2 1\n0 1 0\n"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(rgw(&["verify", "--family", "k6"], None).status.code(), Some(2));
    assert_eq!(rgw(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn bound_and_ftable() {
    let out = rgw(&["bound", "--n", "4", "--k", "2"], None);
    assert_eq!(stdout(&out), "10\n");
    assert_eq!(rgw(&["bound", "--n", "3", "--k", "2"], None).status.code(), Some(2));
    let out = rgw(&["ftable", "--n", "5", "--t", "3", "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "inf");
    assert_eq!(rgw(&["ftable", "--n", "4", "--t", "4"], None).status.code(), Some(2));
}

#[test]
fn matroid_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let bcm = dir.path().join("cx.bcm");
    let bcm = bcm.to_str().unwrap();
    assert!(rgw(&["generate", "binary-cx", "--n", "6", "--out", bcm], None).status.success());
    assert_eq!(stdout(&rgw(&["matroid", "rank", bcm], None)), "5\n");
    assert!(stdout(&rgw(&["matroid", "validate", bcm], None)).starts_with("simple: true"));
    let out = rgw(&["matroid", "min-circuit", bcm, "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["length"], 4);
    let out = rgw(&["matroid", "min-circuit", bcm, "--cap", "3"], None);
    assert!(stdout(&out).starts_with("status: proven-above-cap"));

    let rcg = dir.path().join("k4.rcg");
    std::fs::write(&rcg, "rcg 4 6 6\n0 1 0\n0 2 1\n0 3 2\n1 2 3\n1 3 4\n2 3 5\n").unwrap();
    let out = rgw(&["matroid", "min-cocycle", rcg.to_str().unwrap(), "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["length"], 3);
    assert_eq!(v["certificate"]["side"], serde_json::json!([0]));
}

#[test]
fn directed_and_dot_output() {
    let out = rgw(&["solve", "--kind", "directed", "--json"], Some(b"dg 3 3\n0 1\n1 2\n2 0\n"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["edges"], serde_json::json!([[0, 1], [1, 2], [2, 0]]));
    let out = rgw(&["solve", "--kind", "directed"], Some(b"dg 3 2\n0 1\n1 2\n"));
    assert!(stdout(&out).starts_with("status: proven-infinite"));
    let dot = stdout(&rgw(&["generate", "wheel", "--n", "4", "--format", "dot"], None));
    assert!(dot.starts_with("graph G {") && dot.contains("0 -- 1 [label="));
    assert_eq!(rgw(&["generate", "binary-cx", "--n", "6", "--format", "dot"], None).status.code(), Some(2));
}
