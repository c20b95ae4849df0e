use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use clap::Parser;
use proofdiag_cli::{run, Cli, Report, EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;
use tempfile::TempDir;

const AX_A: &str = r#"{"inputs":[],"layers":[[{"gate":"ax_c","params":["a"]}]]}"#;

// two axioms side by side, and one axiom nested in the other
const SIDE_BY_SIDE: &str = r#"{"inputs":[],"layers":[[{"gate":"ax","params":["a"]},{"gate":"ax","params":["a"]}]]}"#;
const NESTED: &str = r#"{"inputs":[],"layers":[
  [{"gate":"ax","params":["a"]}],
  [{"id":"a"},{"gate":"ax","params":["a"]},{"id":"a^"}],
  [{"id":"a"},{"gate":"swap","params":["a","a^"]},{"id":"a^"}]
]}"#;

const CUT_DERIVATION: &str =
    "(cut (a@a^) (par (ax a)) (exch (perm 2 1 3) (tensor (exch (perm 2 1) (ax a)) (exch (perm 2 1) (ax a)))))";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn invoke(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("proofdiag").chain(args.iter().copied())).unwrap();
    run(&cli)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(r: &Report) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", r.stdout))
}

#[test]
fn check_reports_the_end_sequent() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ax.json", AX_A);
    let r = invoke(&["check", s(&f)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(json(&r), serde_json::json!({"correct": true, "sequent": "a, a^"}));
}

#[test]
fn check_rejects_a_plain_diagram() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", SIDE_BY_SIDE);
    let r = invoke(&["check", s(&f)]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert_eq!(json(&r)["correct"], Value::Bool(false));
}

#[test]
fn compile_defaults_to_control_mode() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ax.sx", "(ax a)");
    let r = invoke(&["compile", s(&f)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout.trim(), AX_A);
    let plain = invoke(&["compile", "--mode", "plain", s(&f)]);
    assert_eq!(plain.stdout.trim(), r#"{"inputs":[],"layers":[[{"gate":"ax","params":["a"]}]]}"#);
}

#[test]
fn compile_then_sequentialize() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "d.sx", "(par (exch (perm 2 1) (ax (a*b))))");
    let compiled = invoke(&["compile", s(&src)]);
    assert_eq!(compiled.code, EXIT_OK);
    let f = write(&dir, "d.json", &compiled.stdout);
    let r = invoke(&["sequentialize", s(&f)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(json(&r)["sequent"], "((b^@a^)@(a*b))");
}

#[test]
fn a_broken_derivation_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.sx", "(exch (perm 2 1) (one))");
    let r = invoke(&["compile", s(&f)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("exch"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn missing_and_malformed_files_exit_two() {
    let dir = TempDir::new().unwrap();
    let r = invoke(&["check", s(&dir.path().join("nope.json"))]);
    assert_eq!(r.code, EXIT_INPUT);
    let f = write(&dir, "bad.json", "{");
    assert_eq!(invoke(&["check", s(&f)]).code, EXIT_INPUT);
    let g = write(&dir, "gate.json", r#"{"inputs":[],"layers":[[{"gate":"frob","params":[]}]]}"#);
    assert_eq!(invoke(&["check", s(&g)]).code, EXIT_INPUT);
}

#[test]
fn cut_elimination_writes_a_trace() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "c.sx", CUT_DERIVATION);
    let compiled = invoke(&["compile", "--mode", "plain", s(&src)]);
    let f = write(&dir, "c.json", &compiled.stdout);
    let trace = dir.path().join("trace.json");
    let r = invoke(&["cutelim", s(&f), "--trace", s(&trace)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let out = json(&r);
    assert_eq!(out["cut_free"], Value::Bool(true));
    let steps: Vec<Value> = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(steps.len() as u64, out["steps"].as_u64().unwrap());
    assert!(steps.iter().all(|s| s["rule"].is_string() && s["anchor"].is_array()));
}

#[test]
fn an_exhausted_budget_exits_three() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "c.sx", CUT_DERIVATION);
    let compiled = invoke(&["compile", "--mode", "plain", s(&src)]);
    let f = write(&dir, "c.json", &compiled.stdout);
    let r = invoke(&["cutelim", s(&f), "--budget", "1"]);
    assert_eq!(r.code, EXIT_BUDGET);
    let r = invoke(&["normalize", s(&f), "--polygraph", "MLL", "--budget", "1"]);
    assert_eq!(r.code, EXIT_BUDGET);
}

#[test]
fn equivalence_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", SIDE_BY_SIDE);
    let b = write(&dir, "b.json", NESTED);
    let same = invoke(&["equiv", s(&a), s(&a)]);
    assert_eq!((same.code, json(&same)), (EXIT_OK, serde_json::json!({"equivalent": "yes"})));
    let diff = invoke(&["equiv", s(&a), s(&b)]);
    assert_eq!((diff.code, json(&diff)), (EXIT_NEGATIVE, serde_json::json!({"equivalent": "no"})));
}

#[test]
fn dot_for_an_identity_and_an_axiom() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", r#"{"inputs":["a"],"layers":[]}"#);
    let r = invoke(&["normalize", "--polygraph", "S", "--format", "dot", s(&id)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.starts_with("digraph"));
    assert_eq!(r.stdout.matches("->").count(), 1);

    let ax = write(&dir, "ax.json", AX_A);
    let r = invoke(&["normalize", "--polygraph", "ctrlMLL", "--format", "dot", s(&ax)]);
    assert_eq!(r.stdout.matches("->").count(), 4);
    assert_eq!(r.stdout.matches("label=\"ax_c").count(), 1);
}

#[test]
fn permcanon_of_a_transposition() {
    let r = invoke(&["permcanon", "perm(2 1)"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        json(&r),
        serde_json::json!({"inputs": ["x1", "x2"], "layers": [[{"gate": "swap", "params": ["x1", "x2"]}]]})
    );
    let dot = invoke(&["permcanon", "--format", "dot", "perm(2 1)", "a", "b"]);
    assert_eq!(dot.stdout.matches("label=\"swap").count(), 1);
    assert_eq!(invoke(&["permcanon", "perm(2 1)", "a"]).code, EXIT_INPUT);
}

#[test]
fn output_is_stable_across_runs() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "c.sx", CUT_DERIVATION);
    let compiled = invoke(&["compile", "--mode", "plain", s(&src)]);
    let f = write(&dir, "c.json", &compiled.stdout);
    let first = invoke(&["cutelim", s(&f)]);
    let second = invoke(&["cutelim", s(&f), "--seed", "7"]);
    assert_eq!(first, second);
}

#[test]
fn the_binary_maps_reports_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ax.json", AX_A);
    let bin = env!("CARGO_BIN_EXE_proofdiag");
    let out = Process::new(bin).args(["check", s(&f)]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"correct":true,"sequent":"a, a^"}"#);
    let out = Process::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = Process::new(bin).args(["--budget", "0", "check", s(&f)]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}
