use std::process::{Command, Output};

use serde_json::Value;

fn qpehr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpehr"))
        .args(args)
        .env_remove("QPEHR_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qpehr(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid json")
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["ehr", "2: 1<2"]), "1/2*X + 1/2*X^2");
    assert_eq!(stdout(&["char", "lambda", "3: 1<2 1<3"]), "1/3");
    assert_eq!(stdout(&["wqsym", "ehr", "2: 1<2"]), "(11) + (12)");
}

#[test]
fn ehr_variants() {
    assert_eq!(stdout(&["ehr-str", "2: 1<2"]), "-1/2*X + 1/2*X^2");
    assert_eq!(stdout(&["ehr", "2: 1<2", "--eval", "4"]), "10");
    assert_eq!(stdout(&["ehr", "2: 1<2", "--eval", "-1"]), "0");
    // the classical polynomial counts maps into {0, ..., N}
    assert_eq!(stdout(&["ehr", "2: 1<2", "--classical", "--eval", "1"]), "3");
    assert_eq!(stdout(&["ehr", "1:", "--classical"]), "1 + X");
}

#[test]
fn coproducts_and_antipode() {
    assert_eq!(
        stdout(&["coproduct", "delta", "2: 1<2"]),
        "[2: 1<2] ⊗ [2:] + [2: 1~2] ⊗ [2: 1<2]"
    );
    let delta = json(&["coproduct", "Delta", "2: 1<2"]);
    assert_eq!(delta.as_array().unwrap().len(), 3);
    assert_eq!(stdout(&["antipode", "1:"]), "-[1:]");
    assert_eq!(stdout(&["theta", "1:"]), "[1:]");
}

#[test]
fn character_table_and_inverse() {
    let table = stdout(&["char", "alpha", "--max-n", "2"]);
    assert_eq!(table.lines().count(), 3);
    assert!(table.contains("2: 1<2 → 1/2"));
    // the inverse of lambda is alpha-str
    for qp in ["2: 1<2", "3: 1<2 1<3", "3: 1~2 2<3"] {
        assert_eq!(
            stdout(&["char", "lambda", "--inverse", qp]),
            stdout(&["char", "alpha-str", qp])
        );
    }
}

#[test]
fn wqsym_operations() {
    assert_eq!(stdout(&["wqsym", "product", "(1)", "(1)"]), "(11) + (12) + (21)");
    assert_eq!(stdout(&["wqsym", "coproduct", "(1)"]), "() ⊗ (1) + (1) ⊗ ()");
    assert_eq!(stdout(&["wqsym", "phi", "1", "(12)"]), "(12)");
    assert_eq!(stdout(&["wqsym", "phi", "-1", "(12)"]), "(11) + (12)");
    assert_eq!(stdout(&["wqsym", "ehr-str", "2: 1<2"]), "(12)");
    let internal = json(&["wqsym", "internal", "(11)"]);
    assert!(!internal.as_array().unwrap().is_empty());
}

#[test]
fn enumeration_counts() {
    let count = |args: &[&str]| json(args).as_array().unwrap().len();
    assert_eq!(count(&["enumerate", "qp", "3"]), 29);
    assert_eq!(count(&["enumerate", "p", "3"]), 19);
    assert_eq!(count(&["enumerate", "p", "3", "--iso"]), 5);
    assert_eq!(count(&["enumerate", "qp", "3", "--iso"]), 9);
    assert_eq!(count(&["enumerate", "qp", "3", "--iso", "--connected"]), 6);
}

#[test]
fn numbers() {
    assert_eq!(stdout(&["bernoulli", "1"]), "-1/2");
    assert_eq!(stdout(&["bernoulli", "4"]), "-1/30");
    assert_eq!(stdout(&["faulhaber", "2"]), "1/6*X - 1/2*X^2 + 1/3*X^3");
    assert_eq!(json(&["bernoulli", "2"]), Value::String("1/6".into()));
}

#[test]
fn verify_reports() {
    let report = stdout(&["verify", "paper-tables"]);
    assert!(report.lines().all(|l| !l.starts_with("FAIL")));
    let v = json(&["verify", "hopf", "--max-n", "2"]);
    assert_eq!(v["suite"], "hopf");
    assert_eq!(v["passed"], true);
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(qpehr(&["ehr", "2: 1<"]).status.code(), Some(2));
    assert_eq!(qpehr(&["wqsym", "product", "(13)", "(1)"]).status.code(), Some(2));
    assert_eq!(qpehr(&["wqsym", "phi", "1/0", "(1)"]).status.code(), Some(2));
    assert_eq!(qpehr(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qpehr(&["no-such-command"]).status.code(), Some(2));
    let bad = qpehr(&["ehr", "x"]);
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chars.txt");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["--cache", p, "char", "beta", "3: 1<2 2<3"]), "1/6");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("qpehr-cache v1\n"));
    assert!(written.lines().any(|l| l.starts_with("beta\t")));
    // reuse gives the same value
    assert_eq!(stdout(&["--cache", p, "char", "beta", "3: 1<2 2<3"]), "1/6");

    std::fs::write(&path, "not a cache\n").unwrap();
    let out = qpehr(&["--cache", p, "char", "beta", "3: 1<2 2<3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("qpehr-cache v1\n"));
}
