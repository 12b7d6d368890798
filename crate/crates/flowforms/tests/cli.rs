use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn flowforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowforms")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flowforms-cli-{}-{}", name, std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let path = dir.join(file);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn p3_reduce_outputs() {
    let dir = scratch("reduce");
    let p3 = write(&dir, "p3.json", r#"{"n":3,"edges":[[1,2],[2,3]]}"#);
    let o = flowforms(&["reduce", &p3]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x13x12 + x23x13 + βx13\n");
    assert_eq!(stdout(&flowforms(&["reduce", &p3, "--at-one"])), "β + 2\n");
    assert_eq!(stdout(&flowforms(&["reduce", &p3, "--shift", "-1"])), "β + 1\n");
    let v: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "reduce", &p3]))).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn other_subcommands_emit_json() {
    let dir = scratch("json");
    let frame = write(&dir, "frame.json", r#"{"n":4,"edges":[[1,2],[1,2],[1,3],[2,3],[2,4],[3,4]]}"#);
    let t: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "triangulate", &frame]))).unwrap();
    assert_eq!(t["flag"], Value::Bool(true));
    let routes = t["routes"].as_array().unwrap().len() as u64;
    assert_eq!(t["f"][1].as_u64(), Some(routes));
    let h_sum: u64 = t["h"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(h_sum, t["maximal_cliques"].as_array().unwrap().len() as u64);
    let s: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "shell", &frame]))).unwrap();
    assert_eq!(s["formal_sum_ok"], Value::Bool(true));
    let e: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "ehrhart", &frame, "--mmax", "3"]))).unwrap();
    assert_eq!(e["values"][0], 1);
    assert_eq!(e["polynomial"][0], "1");
    let r: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "report", &frame]))).unwrap();
    assert_eq!(r["consistent"], Value::Bool(true));
    let tree: Value = serde_json::from_str(&stdout(&flowforms(&["--json", "tree", &frame, "--strategy", "random:7"]))).unwrap();
    assert_eq!(tree["tree"]["children"].as_array().unwrap().len(), 3);
}

#[test]
fn empty_corpus_passes() {
    let dir = scratch("empty");
    let o = flowforms(&["--json", "--corpus", dir.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graphs"], Value::Array(vec![]));
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn corrupted_leaf_fixture_fails_with_witness() {
    let dir = scratch("fixture");
    write(&dir, "good.json", r#"{"n":3,"edges":[[1,2],[2,3]],"leaves":[[[1],[1,2]],[[1,2]],[[1,2],[2]]]}"#);
    write(&dir, "bad.json", r#"{"n":3,"edges":[[1,2],[2,3]],"leaves":[[[1],[1,2]],[[1,2]],[[1],[2]]]}"#);
    let o = flowforms(&["--json", "--corpus", dir.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graphs"][0]["name"], "bad");
    let check = &v["graphs"][0]["checks"]["leaf_fixture"];
    assert_eq!(check["passed"], Value::Bool(false));
    assert!(check["witness"].as_str().unwrap().contains("(1,2)[e1], (2,3)[e2]"), "{}", check["witness"]);
    assert_eq!(v["graphs"][1]["name"], "good");
    assert_eq!(v["graphs"][1]["passed"], Value::Bool(true));
}

#[test]
fn verify_is_deterministic() {
    let a = flowforms(&["--json", "--seed", "5", "verify"]);
    let b = flowforms(&["--json", "--seed", "5", "verify"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["graphs"].as_array().unwrap().len(), 46);
}

#[test]
fn usage_errors_exit_two() {
    let dir = scratch("usage");
    let lp = write(&dir, "loop.json", r#"{"n":2,"edges":[[2,2]]}"#);
    assert_eq!(flowforms(&["reduce", &lp]).status.code(), Some(2));
    assert_eq!(flowforms(&["reduce", "/nonexistent/graph.json"]).status.code(), Some(2));
    assert_eq!(flowforms(&["frobnicate"]).status.code(), Some(2));
    let p3 = write(&dir, "p3.json", r#"{"n":3,"edges":[[1,2],[2,3]]}"#);
    assert_eq!(flowforms(&["tree", &p3, "--strategy", "upside-down"]).status.code(), Some(2));
    assert_eq!(flowforms(&["--corpus", "/nonexistent", "verify"]).status.code(), Some(2));
    write(&dir, "broken.json", "{");
    assert_eq!(flowforms(&["--corpus", dir.to_str().unwrap(), "verify"]).status.code(), Some(2));
}
