use std::fs;
use std::process::{Command, Output};

use semiaut::fixtures;
use tempfile::TempDir;

fn semiaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

/// In-process driver for stdin tests.
fn run_with_stdin(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("semiaut").chain(args.iter().copied());
    let code = semiaut::cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_subcommand() {
    let dir = TempDir::new().unwrap();
    let n3 = write(&dir, "n3.txt", &fixtures::n3().to_text());
    let o = semiaut(&["check", &n3]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "associative\n");

    let bad = write(&dir, "bad.txt", "2\n0 5\n1 0\n");
    let o = semiaut(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let nonassoc = write(&dir, "na.txt", "2\n0 1\n0 0\n");
    let o = semiaut(&["check", &nonassoc]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not associative: (1*0)*1"));
}

#[test]
fn verify_theorem_subcommand() {
    let dir = TempDir::new().unwrap();
    let s6 = write(&dir, "s6.txt", &fixtures::s6().to_text());
    let o = semiaut(&["verify-theorem", &s6]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("autOrder: 8\n"));
    assert!(text.contains("hOrder: 2\n"));
    assert!(text.contains("gOrder: 4\n"));

    let o = semiaut(&["verify-theorem", &s6, "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["autOrder"], 8);
    assert_eq!(v["identityHolds"], true);
}

#[test]
fn analyze_agrees_with_verify_theorem() {
    let t = fixtures::s6().to_text();
    for policy in ["least", "greatest", "seeded"] {
        let (code, analyze, _) =
            run_with_stdin(&["analyze", "-", "--policy", policy, "--seed", "5", "--format", "structured"], &t);
        assert_eq!(code, 0);
        let (code, report, _) = run_with_stdin(
            &["verify-theorem", "-", "--policy", policy, "--seed", "5", "--format", "structured"],
            &t,
        );
        assert_eq!(code, 0);
        let a: serde_json::Value = serde_json::from_str(&analyze).unwrap();
        let r: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(a["psiClassSizes"], r["psiClassSizes"]);
        assert_eq!(a["transversal"], r["transversalUsed"]);
    }
    let (_, text, _) = run_with_stdin(&["analyze", "-"], &t);
    assert!(text.contains("psi: {0} {1} {2,4} {3,5}\n"));
    assert!(text.contains("theta: 0 1 2 3 2 3\n"));
}

#[test]
fn aut_and_build_inflation() {
    let (code, out, _) = run_with_stdin(&["aut", "-"], &fixtures::n3().to_text());
    assert_eq!(code, 0);
    assert_eq!(out, "autOrder: 2\n2\np: 0 1 2\np: 0 2 1\n");

    let (code, out, _) = run_with_stdin(&["build-inflation", "-"], "2\n0 0\n1 1\nsizes: 2 1\n");
    assert_eq!(code, 0);
    assert_eq!(out, "3\n0 0 0\n1 1 1\n0 0 0\n# theta: 0 1 0\n");

    // output is itself a valid table file
    let (code, _, _) = run_with_stdin(&["verify-theorem", "-"], &out);
    assert_eq!(code, 0);

    let (code, _, err) = run_with_stdin(&["build-inflation", "-"], "2\n0 0\n1 1\nsizes: 9 9\n");
    assert_eq!(code, 3, "{err}");
}

#[test]
fn enumerate_and_corpus() {
    let (code, out, _) = run_with_stdin(&["enumerate", "--order", "2"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("# count: 8\n"));
    let (_, out, _) = run_with_stdin(&["enumerate", "--order", "3", "--mode", "up-to-iso", "--format", "structured"], "");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 24);

    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.jsonl");
    let o = semiaut(&["corpus", "--order", "3", "--report", report.to_str().unwrap(), "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theoremFailures: 0\n"));
    assert_eq!(fs::read_to_string(&report).unwrap().lines().count(), 113);

    let (code, _, _) = run_with_stdin(&["enumerate", "--order", "5"], "");
    assert_eq!(code, 3);
    let (code, _, _) = run_with_stdin(&["enumerate", "--order", "2", "--mode", "sideways"], "");
    assert_eq!(code, 2);
}

#[test]
fn usage_errors() {
    let (code, _, err) = run_with_stdin(&["frobnicate"], "");
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, out, _) = run_with_stdin(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("verify-theorem"));
    let o = semiaut(&["check", "/nonexistent/table.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_theorem_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let s6 = write(&dir, "s6.txt", &fixtures::s6().to_text());
    let first = semiaut(&["verify-theorem", &s6, "--format", "structured"]);
    for _ in 0..3 {
        assert_eq!(semiaut(&["verify-theorem", &s6, "--format", "structured"]).stdout, first.stdout);
    }
}
