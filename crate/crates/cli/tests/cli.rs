use std::path::PathBuf;
use std::process::{Command, Output};

fn conserv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conserv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

#[test]
fn eval_applies_a_lambda() {
    let o = conserv(&["eval", "(\\x. suc x) 4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\tvalue\t5"), "{}", stdout(&o));
}

#[test]
fn thm1_on_a_trivial_sentence() {
    let o = conserv(&["thm1", "0=0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("agree-true"));
}

#[test]
fn kernel_corpus_matches_its_golden_verdicts() {
    let o = conserv(&["check", &data("../core/corpus/kernel.ctt")]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.lines().count() >= 55);
}

#[test]
fn mixed_manifest_passes_and_json_is_stable() {
    let path = data("tests/data/manifests");
    let a = conserv(&["--format", "json", "corpus", &path]);
    let b = conserv(&["--format", "json", "corpus", &path]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for r in rows {
        for k in ["entry", "command", "verdict", "detail"] {
            assert!(r.get(k).is_some(), "{r}");
        }
    }
    let entries: Vec<&str> = rows.iter().map(|r| r["entry"].as_str().unwrap()).collect();
    let mut sorted = entries.clone();
    sorted.sort();
    assert_eq!(entries, sorted);
}

#[test]
fn unexpected_verdicts_exit_with_one() {
    let o = conserv(&["corpus", &data("tests/data/wrong.ctt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn module_errors_have_their_own_exit_codes() {
    let parse = conserv(&["thm1", "0 = "]);
    let comb = conserv(&["eval", "(("]);
    let mode = conserv(&["--mode", "sideways", "translate", "0 = 0"]);
    let codes = [parse.status.code(), comb.status.code(), mode.status.code()];
    assert_eq!(codes, [Some(10), Some(11), Some(13)]);
    let json = conserv(&["--format", "json", "thm1", "0 = "]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["error"], "holog");
}

#[test]
fn translate_and_force_print_formulas() {
    let t = conserv(&["--mode", "relevant", "translate", "forall x. x = x"]);
    assert!(t.status.success());
    assert!(stdout(&t).contains("|-"));
    let f = conserv(&["force", "R(0, 1)"]);
    assert!(f.status.success());
    assert!(stdout(&f).contains("forall"), "{}", stdout(&f));
}

#[test]
fn realize_and_denote() {
    let r = conserv(&["--env", "x=3", "realize", "exists y. y + x = 5"]);
    assert!(r.status.success());
    assert!(stdout(&r).contains("agree-true"));
    let d = conserv(&["denote", "|- S 0 : Nat"]);
    assert!(d.status.success(), "{}", stdout(&d));
    assert!(stdout(&d).contains("well-typed-true"));
}

#[test]
fn force_check_small_suite() {
    let o = conserv(&["force-check", "--domain", "2", "--count", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("\tpass\t")).count(), 8);
}
