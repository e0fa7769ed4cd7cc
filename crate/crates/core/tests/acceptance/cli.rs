//! End-to-end checks against the built binary.

use std::process::{Command, Output};

use residue_parts::exact::PartitionTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_residue-parts")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn row(text: &str, label: &str) -> Vec<String> {
    let line = text.lines().find(|l| l.split_whitespace().next() == Some(label)).unwrap();
    line.split_whitespace().skip(1).map(str::to_owned).collect()
}

#[test]
fn exact_examples() {
    let get = |r: &str, n: &str| {
        let v = json(&["exact", "--n", n, "--modulus", "3", "--r", r, "--format", "json"]);
        v["records"][0]["exact"].as_str().unwrap().to_owned()
    };
    assert_eq!(get("1", "5"), "13");
    assert_eq!(get("2", "5"), "5");
    assert_eq!(get("0", "6"), "5");
    assert_eq!(get("-2", "5"), "13");
}

#[test]
fn asym_examples() {
    let ratio = |n: &str, m: &str, r: &str| {
        let v = json(&["asym", "--n", n, "--modulus", m, "--r", r, "--with-exact", "--format", "json"]);
        v["records"][0]["ratio"].as_str().unwrap().parse::<f64>().unwrap()
    };
    assert!((ratio("10", "3", "1") - 1.00417).abs() < 5e-6);
    assert!((ratio("10", "6", "0") + 0.81043).abs() < 5e-6);
    assert_eq!(run(&["asym", "--n", "100", "--modulus", "4", "--r", "3"]).status.code(), Some(4));
    assert_eq!(run(&["asym", "--n", "100", "--modulus", "6", "--r", "2"]).status.code(), Some(4));
}

#[test]
fn ratio_is_rederivable() {
    let v = json(&["asym", "--n", "10,50,200", "-N", "5", "--r", "2", "--with-exact", "--format", "json"]);
    for rec in v["records"].as_array().unwrap() {
        let exact: f64 = rec["exact"].as_str().unwrap().parse().unwrap();
        let estimate: f64 = rec["estimate"].as_str().unwrap().parse().unwrap();
        let ratio: f64 = rec["ratio"].as_str().unwrap().parse().unwrap();
        assert!((exact / estimate - ratio).abs() <= 1e-8 * ratio.abs().max(1.0));
    }
}

#[test]
fn table_examples() {
    let t1 = stdout(&["table", "--which", "1", "--max-n", "1000"]);
    assert_eq!(row(&t1, "Q"), ["1.00417", "1.00142", "1.00013"]);
    let t2 = stdout(&["table", "--which", "2", "--max-n", "100"]);
    assert_eq!(row(&t2, "Q_1"), ["1.09403", "1.01393"]);
    assert_eq!(row(&t2, "Q_3"), ["1.79224", "1.06709"]);
    assert_eq!(row(&t2, "Q_6"), ["-0.81043", "1.23311"]);
    assert_eq!(run(&["table", "--which", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["exact", "--modulus", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["exact", "--n", "5", "--modulus", "0"]).status.code(), Some(4));
}

#[test]
fn verify_suites() {
    assert_eq!(run(&["verify", "--suite", "orthogonality", "--max-modulus", "30"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "dedekind"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn json_round_trip() {
    for args in [
        &["asym", "--n", "10,100", "-N", "3", "--r", "1", "--with-exact", "--format", "json"][..],
        &["table", "--which", "2", "--max-n", "100", "--format", "json"][..],
        &["exact", "--n", "1,2,3", "-N", "4", "--r", "1", "--format", "json"][..],
    ] {
        let text = stdout(args);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
        assert_eq!(text, again);
    }
}

#[test]
fn csv_header_and_separator() {
    let text = stdout(&["exact", "--n", "5,6", "-N", "3", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,N,r,exact"));
    assert_eq!(lines.next(), Some("5,3,,2"));
    assert_eq!(lines.next(), Some("6,3,,5"));
    let asym = stdout(&["asym", "--n", "10", "-N", "3", "--r", "1", "--format", "csv"]);
    let header = asym.lines().next().unwrap();
    assert!(header.starts_with("n,N,r,"), "{header}");
    let body = asym.lines().nth(1).unwrap();
    assert_eq!(body.split(',').count(), header.split(',').count());
}

#[test]
fn warm_cache_matches_cold() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("p.ptable");
    let cache = cache.to_str().unwrap();
    let plain = stdout(&["table", "--which", "2", "--max-n", "1000", "--format", "json"]);
    let cold = stdout(&["table", "--which", "2", "--max-n", "1000", "--format", "json", "--cache", cache]);
    let warm = stdout(&["table", "--which", "2", "--max-n", "1000", "--format", "json", "--cache", cache]);
    assert_eq!(cold, warm);
    assert_eq!(plain, cold);
    let e_cold = stdout(&["exact", "--n", "900", "-N", "7", "--r", "3", "--format", "json"]);
    let e_warm = stdout(&["exact", "--n", "900", "-N", "7", "--r", "3", "--format", "json", "--cache", cache]);
    assert_eq!(e_cold, e_warm);
}

#[test]
fn cache_build_writes_ptable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.ptable");
    stdout(&["cache-build", "--max-n", "300", "--cache", path.to_str().unwrap()]);
    let table = PartitionTable::read_cache(&path).unwrap();
    assert_eq!(table.max_n(), 300);
    assert_eq!(table.values(), &crate::oracle::partitions(300)[..]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(PartitionTable::from_ptable_str(&text).unwrap().to_ptable_string(), text);
}
