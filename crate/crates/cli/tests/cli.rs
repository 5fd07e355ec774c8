use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anyonkit")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anyonkit")).args(args).env(key, val).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("anyonkit-cli-{}-{name}", std::process::id()))
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["pass"], true);
    assert_eq!(r["command"], serde_json::json!(["verify"]));
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["pentagon", "hexagon", "unitarity", "fusion", "verlinde", "modular"]);
    assert_eq!(check(&r, "verlinde")["detail"]["checked"], 512);
    assert_eq!(r["model"]["fingerprint"].as_str().unwrap().len(), 64);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn verify_only_one_suite() {
    let r = json(&run(&["verify", "--only", "verlinde"]));
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn mutation_needs_debug_and_fails_checks() {
    assert_eq!(run(&["verify", "--mutate", "F:BGG:G:-1->1"]).status.code(), Some(2));
    let out = run(&["verify", "--debug", "--mutate", "F:BGG:G:-1→1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["pass"], false);
    assert_eq!(check(&r, "pentagon")["pass"], false);
    let clean = json(&run(&["verify", "--only", "modular"]));
    assert_ne!(r["model"]["fingerprint"], clean["model"]["fingerprint"]);
    assert_eq!(run(&["verify", "--debug", "--mutate", "F:BGG:G:7->1"]).status.code(), Some(2));
}

#[test]
fn rep_table_row() {
    let out = run(&["rep", "--m", "D", "--z", "G", "--assert-table4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["data"]["sector_dims"], serde_json::json!([6, 3]));
    assert_eq!(check(&r, "table4: 3-dim sector center")["detail"]["actual"], "3");

    let r = json(&run(&["rep", "--m", "C", "--z", "A"]));
    assert_eq!(r["data"]["sector_dims"], serde_json::json!([2, 1]));
    assert_eq!(r["data"]["sectors"][0]["report"]["order"], 12);

    let r = json(&run(&["rep", "--m", "A", "--z", "A"]));
    assert_eq!(r["data"]["dim"], 1);
    assert_eq!(r["data"]["image"]["order"], 1);
}

#[test]
fn rep_errors_and_unlisted_rows() {
    assert_eq!(run(&["rep", "--m", "A", "--z", "B"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "--m", "X", "--z", "A"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "--m", "D", "--z", "G", "--strands", "5"]).status.code(), Some(2));
    // No expectations are stored for (E,A), so asserting them fails.
    let out = run(&["rep", "--m", "E", "--z", "A", "--assert-table4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rep_eight_strands() {
    let out = run(&["rep", "--m", "D", "--z", "G", "--strands", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["data"]["dim"], 729);
    assert_eq!(check(&r, "braid relations")["detail"]["checked"], 21);
}

#[test]
fn gates_checks() {
    let out = run(&["gates", "--check", "crlz"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(check(&r, "crlz: leakage = 0")["pass"], true);
    assert_eq!(check(&r, "crlz: restriction = controlled-Z")["pass"], true);
    let all = json(&run(&["gates"]));
    assert_eq!(all["pass"], true);
    assert!(all["checks"].as_array().unwrap().len() >= 10);
    assert_eq!(run(&["gates", "--check", "nope"]).status.code(), Some(2));
}

#[test]
fn protocol_exact_closed_form() {
    let out = run(&["protocol", "--name", "P", "--mode", "exact", "--max-iter", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    // 1 - (2/3)(5/9)^4
    assert_eq!(r["data"]["closed_form"]["expected"], "18433/19683");
    assert_eq!(r["data"]["distribution"]["h"]["exact"], "18433/19683");
    assert_eq!(check(&r, "closed form for h")["pass"], true);
}

#[test]
fn exact_reports_are_byte_identical() {
    let a = run(&["protocol", "--name", "R", "--max-iter", "4"]);
    let b = run_env(&["protocol", "--name", "R", "--max-iter", "4"], "ANYONKIT_THREADS", "1");
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["rep", "--m", "G", "--z", "B"]);
    let b = run(&["rep", "--m", "G", "--z", "B"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn protocol_sampling_is_seeded() {
    let args = ["protocol", "--name", "P", "--mode", "sample", "--max-iter", "5", "--trials", "20000", "--seed", "11"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = run_env(&args, "ANYONKIT_THREADS", "3");
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let n: u64 = r["data"]["samples"].as_object().unwrap().values().map(|v| v["count"].as_u64().unwrap()).sum();
    assert_eq!(n, 20000);
}

#[test]
fn timing_is_opt_in() {
    let r = json(&run(&["--timing", "protocol", "--name", "S"]));
    assert!(r["timing_ms"]["exact"].as_f64().unwrap() >= 0.0);
}

#[test]
fn dump_round_trips_through_loader() {
    let path = tmp("model.json");
    let out = run(&["dump", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let loaded = json(&run(&["--model", path.to_str().unwrap(), "verify"]));
    let builtin = json(&run(&["verify"]));
    assert_eq!(loaded["pass"], true);
    assert_eq!(loaded["model"]["fingerprint"], builtin["model"]["fingerprint"]);
    std::fs::remove_file(path).ok();
}

#[test]
fn out_flag_writes_report() {
    let path = tmp("report.json");
    let out = run(&["gates", "--check", "pq", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["protocol", "--name", "Z"]).status.code(), Some(2));
    assert_eq!(run(&["protocol", "--name", "P", "--max-iter", "0"]).status.code(), Some(2));
    assert_eq!(run_env(&["gates", "--check", "pq"], "ANYONKIT_THREADS", "0").status.code(), Some(2));
    assert_eq!(run(&["--model", "/nonexistent/model.json", "verify"]).status.code(), Some(2));
}
