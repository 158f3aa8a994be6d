use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn dpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpn"))
        .args(args)
        .env_remove("DPN_P")
        .env_remove("DPN_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn simple_module_table_in_csv() {
    let o = dpn(&["hilbert", "--family", "U", "--p", "3", "--n", "1", "--g", "x1^3 - t", "--N", "20", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,dim"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(*row, format!("{i},{}", 3 * (i / 3 + 1)));
    }
    // Diagnostics stay off stdout.
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}

#[test]
fn defect_module_fit() {
    let v = json(&dpn(&["fit", "--family", "M(k,s)", "--p", "2", "--n", "2", "--k", "1", "--s", "0", "--N", "60"]));
    assert_eq!(v["Dim"], 3);
    assert_eq!(v["multiplicity"], "1/2");
}

#[test]
fn hilbert_json_round_trips_through_fit() {
    let args = ["--family", "M(k,s)", "--p", "2", "--n", "2", "--k", "1", "--s", "0", "--N", "60"];
    let fused = json(&dpn(&[&["fit"][..], &args].concat()));
    let table = dpn(&[&["hilbert", "--format", "json"][..], &args].concat());
    assert!(table.status.success());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.json");
    std::fs::write(&path, &table.stdout).unwrap();
    let from_file = json(&dpn(&["fit", "--dims", path.to_str().unwrap(), "--p", "2"]));
    assert_eq!(from_file, fused);

    // Same through stdin, from the CSV form.
    let csv = dpn(&[&["hilbert", "--format", "csv"][..], &args].concat());
    let mut child = Command::new(env!("CARGO_BIN_EXE_dpn"))
        .args(["fit", "--dims", "-", "--p", "2"])
        .env_remove("DPN_P")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&csv.stdout).unwrap();
    assert_eq!(json(&child.wait_with_output().unwrap()), fused);
}

#[test]
fn witness_chain_is_cheap() {
    let v = json(&dpn(&["witness", "--op", "x1^3*d1[2] + x2", "--p", "3", "--n", "2"]));
    assert!(v["cost"].as_u64().unwrap() <= 5);
    assert_ne!(v["scalar"], "0");
    assert!(!v["steps"].as_array().unwrap().is_empty());

    let batch = json(&dpn(&["witness", "--random", "50", "--p", "2", "--n", "2", "--seed", "9"]));
    assert_eq!(batch["replayed"], 50);
    assert_eq!(batch, json(&dpn(&["witness", "--random", "50", "--p", "2", "--n", "2", "--seed", "9", "--threads", "1"])));
}

#[test]
fn specs_from_json_and_files() {
    let inline = json(&dpn(&["poincare", "--spec", r#"{"family": "Pn", "p": 2, "n": 2}"#, "--terms", "4"]));
    assert_eq!(inline["pole_order"], 3);
    assert_eq!(inline["terms"], serde_json::json!(["1", "3", "6", "10", "15"]));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"family": "cyclic", "p": 2, "generators": ["d1[1]", "d1[2]", "d1[3]", "d1[4]"], "B": 16}"#)
        .unwrap();
    let o = dpn(&["hilbert", "--spec", path.to_str().unwrap(), "--N", "4", "--format", "json"]);
    assert_eq!(json(&o), serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn environment_supplies_the_prime() {
    let o = Command::new(env!("CARGO_BIN_EXE_dpn"))
        .args(["hilbert", "--family", "Pn", "--n", "1", "--N", "3", "--format", "json"])
        .env("DPN_P", "5")
        .output()
        .unwrap();
    assert_eq!(json(&o), serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn classification_report() {
    let v = json(&dpn(&["classify", "--g", "x^4 - t", "--p", "2", "--ks", "1"]));
    assert_eq!(v["ideal"]["k"], serde_json::json!([2]));
    assert_eq!(v["tk"]["dim"], 4);
    assert_eq!(v["tk"]["end_dim"], 2);
    assert_eq!(v["tk_simple"]["dense"], true);
    assert_eq!(v["U"]["Dim"], 1);
}

#[test]
fn listing_and_construction() {
    let list = stdout(&dpn(&["zoo-list"]));
    for name in ["Pn", "M(k,s)", "U", "cyclic"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let mr = json(&dpn(&["mr-construct", "--r", "1/2", "--p", "2", "--count", "2"]));
    assert_eq!(mr["breakpoints"], serde_json::json!([12, 128]));
}

#[test]
fn exit_codes() {
    // Usage errors print the grammar and exit 2.
    for args in [
        &["hilbert", "--family", "nope", "--p", "2"][..],
        &["hilbert", "--family", "Pn"][..],
        &["hilbert", "--spec", "{not json", "--p", "2"][..],
        &["frobnicate"][..],
        &["witness", "--op", "x1 +", "--p", "2"][..],
        &["mr-construct", "--r", "3/2", "--p", "2"][..],
    ] {
        let o = dpn(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"), "{args:?}");
    }
    // Computation failures exit 1.
    let o = dpn(&["fit", "--family", "Pn", "--p", "2", "--n", "1", "--N", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fit failure"));
    let o = dpn(&["classify", "--g", "x^2 + 1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_suite_reports_each_criterion() {
    let o = dpn(&["check-suite", "--only", "3,9,10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    // The monomial-module criterion is red by construction, so any run that
    // includes it exits nonzero.
    let o = dpn(&["check-suite", "--only", "9,11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[1]["passed"], false);
}
