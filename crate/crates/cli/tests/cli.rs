use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvecount")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn cusp_report() {
    let v = json(&["germ", "analyze", "y^2-x^3"]);
    assert_eq!(v["format"], "curvecount-cli");
    assert_eq!(v["version"], 1);
    let r = &v["result"];
    assert_eq!(r["tjurina"], 2);
    assert_eq!(r["determinacy_window"], serde_json::json!([2, 3]));
    assert_eq!(r["scheme_length_at"]["3"], 7);
}

#[test]
fn germ_errors_have_distinct_codes() {
    assert_eq!(code(&["germ", "analyze", "x*y+1"]), 2);
    assert_eq!(code(&["germ", "analyze", "x^2*y^2"]), 3);
    assert_eq!(code(&["germ", "analyze", "x**"]), 2);
    assert_eq!(code(&["germ", "catalog", "Z9"]), 2);
}

#[test]
fn catalog_lists_the_node() {
    let v = json(&["germ", "catalog", "node"]);
    assert_eq!(v["result"][0]["label"], "A1");
    assert_eq!(v["result"][0]["n"], 5);
}

#[test]
fn severi_values() {
    assert_eq!(json(&["severi", "p2", "-d", "4", "--nodes", "3"])["result"]["count"], "675");
    assert_eq!(json(&["severi", "p1xp1", "-a", "2", "-b", "2", "--nodes", "1"])["result"]["count"], "12");
}

#[test]
fn severi_limits() {
    assert_eq!(code(&["severi", "p2", "-d", "13"]), 3);
    assert_eq!(code(&["severi", "p2", "-d", "13", "--ceiling", "13"]), 0);
    assert_eq!(code(&["severi", "p2", "-d", "3", "--nodes", "4"]), 3);
    assert_eq!(code(&["severi", "p2", "-d", "0"]), 2);
    assert_eq!(code(&["severi", "oracle", "-d", "9", "--nodes", "3"]), 3);
}

#[test]
fn oracle_agrees() {
    let v = json(&["severi", "oracle", "-d", "3", "--nodes", "1", "--seed", "11"]);
    assert_eq!(v["result"]["recursion"], "12");
    assert_eq!(v["result"]["floor_diagrams"], "12");
    assert_eq!(v["result"]["pencil"]["count"], 12);
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn fit_and_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let fit = json(&["fit", "nodes", "--max-r", "2"]);
    assert_eq!(fit["result"]["residual_consistent"], true);
    assert_eq!(fit["result"]["a"][0]["text"], "3*x + 2*y + t");
    let table = dir.path().join("fit.json");
    std::fs::write(&table, serde_json::to_vec(&fit).unwrap()).unwrap();
    let path = table.to_str().unwrap();
    let v = json(&["series", "eval", "--a-table", path, "--parts", "A1,A1", "--chern", "16,-12,9,3"]);
    assert_eq!(v["result"]["value"], "225");
    assert_eq!(v["result"]["integral"], true);
}

#[test]
fn missing_table_entry() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("a1.json");
    std::fs::write(&table, r#"{"a_table":[{"parts":["A1"],"poly":"3x+2y+t"}]}"#).unwrap();
    let out =
        run(&["series", "eval", "--a-table", table.to_str().unwrap(), "--parts", "A1,A1", "--chern", "16,-12,9,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing entry A1,A1"));
    let single =
        json(&["series", "eval", "--a-table", table.to_str().unwrap(), "--parts", "A1", "--chern", "16,-12,9,3"]);
    assert_eq!(single["result"]["value"], "27");
}

#[test]
fn assemble_uses_codimension_weights() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.json");
    std::fs::write(&table, r#"{"a_table":[{"parts":["A1"],"poly":"3x+2y+t"},{"parts":["A2"],"poly":"x"}]}"#).unwrap();
    let v = json(&["series", "assemble", "--a-table", table.to_str().unwrap(), "--truncation", "2"]);
    let s = &v["result"];
    assert_eq!(s["weights"]["A2"], 2);
    let parts: Vec<String> = s["terms"].as_array().unwrap().iter().map(|t| t["parts"].to_string()).collect();
    assert!(parts.contains(&r#"["A2"]"#.to_string()));
    assert!(!parts.contains(&r#"["A1","A2"]"#.to_string()));
}

#[test]
fn scan_reports_threshold() {
    let v = json(&["fit", "scan", "-r", "1", "--range", "1-8", "--max-r", "1"]);
    assert_eq!(v["result"]["threshold"], 1);
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = ["fit", "nodes", "--max-r", "3", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let oracle = ["severi", "oracle", "-d", "4", "--seed", "5", "--json"];
    assert_eq!(run(&oracle).stdout, run(&oracle).stdout);
}

fn evaluations(v: &Value) -> u64 {
    v["stats"]["evaluations"].as_u64().unwrap()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.txt");
    let c = cache.to_str().unwrap();
    let first = json(&["severi", "p2", "-d", "8", "--nodes", "4", "--cache", c]);
    let saved = std::fs::read(&cache).unwrap();
    let second = json(&["severi", "p2", "-d", "8", "--nodes", "4", "--cache", c]);
    assert_eq!(first["result"], second["result"]);
    assert!(evaluations(&second) < evaluations(&first));
    assert_eq!(second["stats"]["loaded"], first["stats"]["entries"]);
    assert_eq!(std::fs::read(&cache).unwrap(), saved);
}

#[test]
fn corrupt_cache_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.txt");
    std::fs::write(&cache, "P2 3 1 0\n").unwrap();
    assert_eq!(code(&["severi", "p2", "-d", "3", "--cache", cache.to_str().unwrap()]), 2);
    assert!(Path::new(&cache).exists());
}
