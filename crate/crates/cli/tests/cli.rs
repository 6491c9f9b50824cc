use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).current_dir(dir).args(args).output().expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn frohardt_suite_confirmed_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = forge(dir.path(), &["suite", "frohardt", "--t", "2"]);
    assert_eq!(a.status.code(), Some(0));
    let b = forge(dir.path(), &["--threads", "1", "suite", "frohardt", "--t", "2"]);
    let (mut ja, mut jb) = (json(&a), json(&b));
    assert_eq!(ja["verdict"], "confirmed");
    ja.as_object_mut().unwrap().remove("sidecar");
    jb.as_object_mut().unwrap().remove("sidecar");
    assert_eq!(ja, jb);
}

#[test]
fn tiny_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = forge(dir.path(), &["--budget", "1", "suite", "evensq", "--t", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "confirmed-on-searched-space");
}

#[test]
fn triangle_witness_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let fano = r#"{"points": 7, "lines": [[0,1,2],[0,3,4],[0,5,6],[1,3,5],[1,4,6],[2,3,6],[2,4,5]]}"#;
    std::fs::write(dir.path().join("bad.json"), fano).unwrap();
    let out = forge(dir.path(), &["gq", "verify", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["failure"], "triangle");
}

#[test]
fn malformed_input_exit_2_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.json"), r#"{"points": 3, "lines": [[0, 1], [2, -1]]}"#).unwrap();
    let out = forge(dir.path(), &["gq", "verify", "g.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lines[1][1]"));
    let out = forge(dir.path(), &["kantor", "verify", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pipeline_build_verify_benson() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(forge(d, &["kantor", "builtin", "e8", "--out", "e8.json"]).status.success());
    let v = forge(d, &["kantor", "verify", "e8.json"]);
    assert_eq!(json(&v)["passed"], true);
    assert!(forge(d, &["gq", "build", "e8.json", "--out", "g.json"]).status.success());
    let v = json(&forge(d, &["gq", "verify", "g.json"]));
    assert_eq!(v["points"], 15);
    let b = json(&forge(d, &["gq", "benson", "e8.json"]));
    assert_eq!(b["ok"], true);
    assert_eq!(b["elements"].as_array().unwrap().len(), 8);
    let iso = json(&forge(d, &["gq", "iso", "g.json", "g.json"]));
    assert_eq!(iso["isomorphic"], true);
    let c = json(&forge(d, &["kantor", "classify", "e8.json"]));
    assert_eq!(c["case"], "1");
}

#[test]
fn broken_family_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(forge(d, &["kantor", "builtin", "e8", "--out", "e8.json"]).status.success());
    let text = std::fs::read_to_string(d.join("e8.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["Fstar"][0] = v["Fstar"][1].clone();
    std::fs::write(d.join("bad.json"), v.to_string()).unwrap();
    let out = forge(d, &["kantor", "verify", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn report_merge_and_catalog_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(forge(d, &["--seed-doc", "--out", "cats"]).status.success());
    let a = forge(d, &["--catalog", "cats/catalog-order8.json", "suite", "frohardt", "--t", "2", "--out", "a.json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = forge(d, &["suite", "evensq", "--t", "2", "--out", "b.json"]);
    assert_eq!(b.status.code(), Some(0));
    let m = forge(d, &["report", "merge", "a.json", "b.json"]);
    assert_eq!(m.status.code(), Some(0));
    let m = json(&m);
    assert_eq!(m["verdict"], "confirmed");
    assert_eq!(m["reports"].as_array().unwrap().len(), 2);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(d.join("a.json")).unwrap()).unwrap();
    assert_eq!(a["catalog_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn subgq_bundle_written() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(forge(d, &["kantor", "builtin", "conic4", "--out", "c4.json"]).status.success());
    assert!(forge(d, &["gq", "build", "c4.json", "--out", "parent.json"]).status.success());
    let out = forge(d, &["subgq", "extract", "--parent", "parent.json", "--family", "c4.json", "--subplane-order", "2", "--out", "res"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(d.join("res/summary.json")).unwrap()).unwrap();
    let results = summary["results"].as_array().unwrap();
    assert!(!results.is_empty());
    assert!(results.iter().all(|r| r["classical"] == true && r["sigma"] == 2));
    let v = json(&forge(d, &["gq", "verify", "res/result-0/geometry.json"]));
    assert_eq!(v["order"], serde_json::json!([2, 2]));
    let v = json(&forge(d, &["kantor", "verify", "res/result-0/family.json"]));
    assert_eq!(v["passed"], true);
}

#[test]
fn regularity_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(forge(d, &["kantor", "builtin", "heis3", "--out", "h.json"]).status.success());
    let p = json(&forge(d, &["reg", "point", "--family", "h.json", "0"]));
    assert_eq!(p["regular"], true);
    let s = json(&forge(d, &["reg", "symmetry", "h.json"]));
    assert_eq!(s["size"], 3);
    let st = json(&forge(d, &["reg", "star", "h.json"]));
    assert!(st["holds"].is_boolean());
    let pl = json(&forge(d, &["plane", "derive", "h.json"]));
    assert_eq!(pl["points"], 9);
    let t = json(&forge(d, &["gq", "benson", "--table", "6"]));
    assert!(!t["rows"].as_array().unwrap().is_empty());
}
