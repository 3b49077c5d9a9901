//! Command line round trips through temporary files.

use std::fs;
use std::path::PathBuf;

use jseq::cli::{run_args, Outcome, EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jseq-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn jseq(args: &[&str]) -> Outcome {
    run_args(std::iter::once("jseq").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    serde_json::from_str(&jseq(&full).stdout).unwrap()
}

#[test]
fn proofs_check_and_tampered_proofs_fail() {
    let r = report(&["prove", "x:(P -> Q) -> y:P -> (x*y):Q"]);
    assert_eq!(r["status"], "derivable");
    let proof = r["result"]["derivation"].to_string();
    let path = scratch("jk.json", &proof);
    let ok = jseq(&["check-proof", path.to_str().unwrap()]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);

    let tampered = scratch("jk-bad.json", &proof.replace("(x*y):Q", "(y*x):Q"));
    let bad = jseq(&["check-proof", tampered.to_str().unwrap()]);
    assert_eq!(bad.code, EXIT_FAIL);
    assert!(
        bad.stderr.starts_with("invalid derivation"),
        "{}",
        bad.stderr
    );
}

#[test]
fn countermodels_check() {
    let goal = "x:P -> P";
    let r = report(&["prove", goal, "--logic", "J"]);
    assert_eq!(r["status"], "not-derivable");
    let path = scratch("model.json", &r["result"]["model"].to_string());
    let ok = jseq(&["check-model", path.to_str().unwrap(), goal, "--logic", "J"]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stdout);
    assert!(ok.stdout.contains("refutes"));
    // The same model breaks reflexivity, so it is no JT model.
    let jt = jseq(&["check-model", path.to_str().unwrap(), goal, "--logic", "JT"]);
    assert_eq!(jt.code, EXIT_FAIL);
}

#[test]
fn constant_specifications_are_read_from_files() {
    let cs = scratch("cs.txt", "# axiom constants\nc : P -> Q -> P\n");
    let cs = cs.to_str().unwrap();
    let with = jseq(&["prove", "c:(P -> Q -> P)", "--cs", cs]);
    assert_eq!(with.code, EXIT_OK, "{}", with.stdout);
    let without = jseq(&["prove", "c:(P -> Q -> P)"]);
    assert_eq!(without.code, EXIT_FAIL);
}

#[test]
fn exit_codes() {
    assert_eq!(jseq(&["prove", "P -> P"]).code, EXIT_OK);
    assert_eq!(jseq(&["prove", "P"]).code, EXIT_FAIL);
    assert_eq!(
        jseq(&["prove", "P", "--logic", "JD", "--fuel", "50"]).code,
        EXIT_UNKNOWN
    );
    assert_eq!(
        jseq(&["prove", "P", "--logic", "JD", "--serial-once"]).code,
        EXIT_FAIL
    );
    assert_eq!(jseq(&["prove", "P ->"]).code, EXIT_USAGE);
    assert_eq!(jseq(&["prove", "P", "--logic", "Q9"]).code, EXIT_USAGE);
    assert_eq!(jseq(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn parse_prints_canonical_forms() {
    let out = jseq(&["parse", "w |= x : (P->Q) , w R v => v|=Q"]);
    assert_eq!(out.stdout, "w |= x:(P -> Q), w R v => v |= Q\n");
    let latex = jseq(&["parse", "[]P -> P", "--output", "latex"]);
    assert!(latex.stdout.contains("\\Box"), "{}", latex.stdout);
}

#[test]
fn corpus_reports_each_goal() {
    let file = scratch("goals.txt", "P -> P\n# comment\nx:P -> P\n\n");
    let out = jseq(&["corpus", file.to_str().unwrap(), "--logic", "JT"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 2);
    let j = jseq(&["corpus", file.to_str().unwrap()]);
    assert_eq!(j.code, EXIT_FAIL);
}

#[test]
fn budget_report_lists_bounds() {
    let out = jseq(&["prove", "x:P -> P", "--logic", "JT", "--budget-report"]);
    assert!(out.stdout.contains("n(:)=1"), "{}", out.stdout);
    assert!(out.stdout.contains("bound (R:)"), "{}", out.stdout);
}
