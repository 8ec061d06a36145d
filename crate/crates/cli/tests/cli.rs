use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdivisor")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn records(path: &std::path::Path) -> Vec<Value> {
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v.as_array().expect("top-level array").clone()
}

fn assert_schema(r: &Value) {
    for key in ["command", "params", "nq", "nt", "outcome", "millis"] {
        assert!(r.get(key).is_some(), "missing {key} in {r}");
    }
    assert!(r["params"].is_object());
    assert!(r["millis"].is_u64());
}

#[test]
fn verify_single_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let o = run(&["verify", "--suite", "kluyver", "--order", "20", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rs = records(&out);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0]["outcome"], "pass");
    assert_eq!(rs[0]["id"], "kluyver");
    assert_eq!(rs[0]["nq"], 20);
    assert_schema(&rs[0]);
}

#[test]
fn unknown_id_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let o = run(&["verify", "--suite", "kluyver", "no-such-id", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_params_are_usage_errors() {
    assert_eq!(run(&["verify", "--suite", "ramanujan-entry4", "--params", "c=1/0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "kluyver", "--params", "zz=1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn io_failures_have_their_own_code() {
    let o = run(&["verify", "--suite", "kluyver", "--order", "5", "--json", "/nonexistent/dir/out.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["verify", "--file", "/nonexistent/suite.txt"]).status.code(), Some(3));
    assert_eq!(run(&["report", "/nonexistent/r.json"]).status.code(), Some(3));
}

#[test]
fn series_matches_divisor_counts() {
    let o = run(&["series", "kluyver/divisor", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q + 2*q^2 + 2*q^3 + 3*q^4 + 2*q^5 + 4*q^6");
    let o = run(&["series", "ramanujan-entry4/divisor", "--order", "3", "--params", "c=1/2"]);
    assert_eq!(stdout(&o).trim(), "1/2*q + 3/4*q^2 + 5/8*q^3");
    assert_eq!(run(&["series", "kluyver/nope"]).status.code(), Some(2));
}

#[test]
fn discrepancy_entry_never_sets_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let o = run(&["verify", "--suite", "dilcher-original-discrepancy", "--order", "12", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rs = records(&out);
    assert!(!rs.is_empty());
    assert!(rs.iter().all(|r| r["expected_fail"] == true));
}

#[test]
fn suite_file_runs_in_sorted_order() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("s.txt");
    fs::write(&suite, "# two checks\nuchimura-3way nq=8\nkluyver nq=6 nt=6\nkluyver nq=7\n").unwrap();
    let out = dir.path().join("s.json");
    let o = run(&["verify", "--file", suite.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<(String, u64)> = records(&out)
        .iter()
        .map(|r| (r["id"].as_str().unwrap().to_string(), r["nq"].as_u64().unwrap()))
        .collect();
    assert_eq!(ids, vec![("kluyver".into(), 6), ("kluyver".into(), 7), ("uchimura-3way".into(), 8)]);
    fs::write(&suite, "kluyver nq=6\nno-such-id\n").unwrap();
    assert_eq!(run(&["verify", "--file", suite.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic() {
    let a = run(&["simulate", "dag", "--n", "8", "--p", "1/2", "--trials", "20000", "--seed", "7"]);
    let b = run(&["simulate", "dag", "--n", "8", "--p", "0.5", "--trials", "20000", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["simulate", "heap", "--q", "1/2", "--trials", "50000", "--seed", "1"]);
    let d = run(&["simulate", "heap", "--q", "0.5", "--trials", "50000", "--seed", "1"]);
    assert_eq!(stdout(&c), stdout(&d));
    assert!(stdout(&c).contains("variance"));
    assert_eq!(run(&["simulate", "dag", "--p", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "coin"]).status.code(), Some(2));
}

#[test]
fn simulate_json_has_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim.json");
    run(&["simulate", "dag", "--n", "6", "--trials", "5000", "--seed", "3", "--json", out.to_str().unwrap()]);
    let rs = records(&out);
    assert_schema(&rs[0]);
    let h: u64 = rs[0]["histogram"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(h, 5000);
}

#[test]
fn limit_and_partitions_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    let p = dir.path().join("p.json");
    let o = run(&["limit", "geometric-b", "--f", "geometric:-1", "--order", "15", "--json", l.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rl = records(&l);
    assert_schema(&rl[0]);
    assert_eq!(rl[0]["outcome"], "pass");
    assert_eq!(run(&["limit", "two-var-poly", "--f", "poly:1", "--order", "6"]).status.code(), Some(2));
    assert_eq!(run(&["limit", "two-var-poly", "--f", "poly:1", "--order", "6", "--unchecked"]).status.code(), Some(0));
    let o = run(&["partitions", "--max-n", "12", "--max-m", "2", "--c", "1,-1/3", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&p).len(), 6);
    let merged = dir.path().join("m.json");
    let o = run(&["report", l.to_str().unwrap(), p.to_str().unwrap(), "--json", merged.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 records: 7 pass"));
    assert_eq!(records(&merged).len(), 7);
}
