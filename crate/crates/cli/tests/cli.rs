use std::process::{Command, Output};

use serde_json::Value;

fn numlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = numlab(&full);
    assert!(o.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["covering", "search", "--length", "banana"][..],
        &["waring", "reps", "--target", "1.5"],
        &["waring", "reps", "--target", "1e8", "--bogus"],
        &["sturmian", "prefix", "--theta", "sqrtx", "--len", "3"],
        &["sturmian", "prefix", "--theta", "1.5", "--len", "3"],
        &["--precision-bits", "8", "sturmian", "prefix", "--len", "3"],
        &["--workers", "0", "waring", "count", "--target", "100"],
        &["waring", "reps", "--target", "1e13"],
        &["covering", "search", "--length", "30", "--exhaustive"],
        &["selfpower", "count", "--n", "0", "--exp", "0"],
    ] {
        let o = numlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = numlab(&["covering", "search", "--length", "banana"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("banana"));
}

#[test]
fn failed_checks_exit_1() {
    let o = numlab(&["covering", "verify", "--start", "27831", "--length", "17"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("not covered\n"));
    let o = numlab(&["selfpower", "amicable", "--verify", "4,367"]);
    assert_eq!(o.status.code(), Some(1));
    let o = numlab(&["covering", "fcfs", "--to", "40", "--side", "alternate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    assert!(numlab(&["--help"]).status.success());
    assert!(numlab(&["sturmian", "walk", "--help"]).status.success());
}

#[test]
fn scientific_targets_are_exact() {
    let v = json(&["waring", "reps", "--target", "1e5"]);
    assert_eq!(v["target"], "100000");
    assert_eq!(v["ordered_count"], 72);
    assert_eq!(v["quads"][0], serde_json::json!(["6", "24", "34", "36"]));
}

#[test]
fn big_integers_are_strings() {
    let v = json(&["waring", "lift", "--root", "1,2,3,4", "--b", "673"]);
    let target = v["target"].as_str().unwrap();
    assert_eq!(target.len(), 2022);
    assert!(target.starts_with('1') && target[1..].bytes().all(|b| b == b'0'));
    let v = json(&["covering", "instantiate"]);
    assert_eq!(v["start"], "27830");
    assert_eq!(v["modulus"], "30030");
    let v = json(&["selfpower", "count", "--n", "631296394"]);
    assert_eq!(v["digit_count"], "5555555555");
}

#[test]
fn primitive_solutions() {
    let v = json(&["waring", "primitive", "--target", "1e11", "--limit-first", "2", "--strong"]);
    let quads = v["quads"].as_array().unwrap();
    assert_eq!(quads.len(), 2);
    assert_eq!(quads[0], serde_json::json!(["3", "649", "1775", "4549"]));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_numlab"))
        .args(["sturmian", "prefix", "--len", "5"])
        .env("DOI2_PRECISION_BITS", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_numlab"))
        .args(["sturmian", "prefix", "--len", "34", "--theta", "pi/8"])
        .env("DOI2_PRECISION_BITS", "512")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "abbababbababbababbababbababbabbaba\n");
    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_numlab"))
        .args(["--precision-bits", "64", "sturmian", "prefix", "--len", "3"])
        .env("DOI2_PRECISION_BITS", "16")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn csv_columns() {
    let o = numlab(&["selfpower", "search", "--limit", "60", "--csv"]);
    let text = stdout(&o);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("n,digit_count,repdigit_flag,method"));
    assert_eq!(rows.nth(9), Some("10,11,1,exact"));
    let o = numlab(&["covering", "instantiate", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.svg");
    let o = numlab(&[
        "sturmian", "walk", "--steps", "2000", "--svg", path.to_str().unwrap(), "--mark-color", "red", "--unit", "3",
    ]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.matches(r#"fill="red""#).count() > 100);
    assert!(stdout(&o).starts_with("steps 2000\n"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gaps.txt");
    let o = numlab(&["selfpower", "gaps", "--seq", "S1", "--count", "12", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1\n1\n1\n1\n1\n1\n1\n1\n2\n11\n11\n");
}

#[test]
fn fcfs_trace_format() {
    let v = json(&["covering", "fcfs", "--to", "30", "--report-available"]);
    assert_eq!(v["steps"][0], serde_json::json!({"box": 17, "prime": 17}));
    assert_eq!(v["steps"][1]["prime"], 19);
    assert_eq!(v["available_at"]["17"], 0);
    // extending the same covering leftward meets 17, 19, 23 and then runs dry
    let o = numlab(&["covering", "fcfs", "--to", "30", "--side", "left"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("stuck at box 25\n"));
}

#[test]
fn unwritable_reproduce_target() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let o = numlab(&["reproduce", "--out", blocker.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("IO summary.txt"));
}
