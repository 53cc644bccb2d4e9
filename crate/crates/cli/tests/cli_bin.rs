//! End-to-end runs of the `dyntopo` binary: output bytes and exit codes.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn run_on(subcommand: &str, trace: &str) -> Output {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(trace.as_bytes()).unwrap();
    Command::new(env!("CARGO_BIN_EXE_dyntopo"))
        .arg(subcommand)
        .arg(file.path())
        .output()
        .unwrap()
}

#[test]
fn run_prints_replay_output() {
    let out = run_on("run", "node a\nnode b\nedge a b\nedge b a\norder\n");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "edge a b acyclic\nedge b a cyclic\ncyclic 1\n"
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_error_exits_1() {
    let out = run_on("run", "frobnicate x\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1"));
}

#[test]
fn semantic_error_exits_2_after_partial_output() {
    let out = run_on("run", "node a\nedge a a\nedge a ghost\n");
    assert_eq!(out.status.code(), Some(2));
    // The replay halts, but everything before the bad line is printed.
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "edge a a cyclic\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn check_passes_on_replayed_graphs() {
    // No public operation can break the invariants, so a trace-driven
    // `check` always prints ok; the FAIL branch (exit 3) is reachable only
    // from corrupted state and is covered by the library's own tests.
    let out = run_on("run", "node a\nnode b\nedge b a\ncheck\norder\ncheck\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "edge b a acyclic\ncheck ok\norder b a\ncheck ok\n"
    );
}

#[test]
fn dot_prints_only_the_graph() {
    let out = run_on("dot", "node a\nnode b\nedge a b\nedge b a\n");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout,
        "digraph g {\n    a;\n    b;\n    a -> b;\n    b -> a [style=dashed];\n}\n"
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bench_prints_stats() {
    let out = run_on("bench", "node a\nnode b\nedge a b\nedge b a\ndeledge a b\n");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("incremental_ops 5"));
    assert!(stdout.contains("batch_ops 5"));
    assert!(stdout.contains("mismatches 0"));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bench_rejects_query_ops() {
    let out = run_on("bench", "node a\norder\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn version_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_dyntopo"))
        .arg("--version")
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("dyntopo "));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn missing_file_exits_1() {
    let out = Command::new(env!("CARGO_BIN_EXE_dyntopo"))
        .args(["run", "/nonexistent/trace.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
