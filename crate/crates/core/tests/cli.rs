use std::path::Path;
use std::process::{Command, Output};

const Z4: &str = r#"{
  "ring": { "name": "Z/4", "additive_orders": [4], "one": [1], "mul": [[[1]]] },
  "modules": [
    { "name": "R", "ring": "Z/4", "additive_orders": [4], "actions": [[[1]]] },
    { "name": "Z/2", "ring": "Z/4", "additive_orders": [2], "actions": [[[1]]] }
  ]
}"#;

fn finmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finmod")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "z4.json", Z4);

    let o = finmod(&["validate", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/4"));

    let o = finmod(&["analyze", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modules"].as_array().unwrap().len(), 2);

    let o = finmod(&["classify", &f, "--module", "R", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["local"], true);
    assert_eq!(v["semisimple"], false);

    let o = finmod(&["lattice", &f, "--module", "R", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn supplements_of_the_maximal_submodule() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "z4.json", Z4);
    let o = finmod(&["supplements", &f, "--module", "R", "--sub", "2", "--kind", "supplement", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let certs = v.as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["sum_is_whole"], true);
    assert_eq!(certs[0]["minimal"], true);
    assert_eq!(certs[0]["witness"], serde_json::json!([[1]]));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"ring\": [");
    let o = finmod(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let f = write(dir.path(), "z4.json", Z4);
    let o = finmod(&["classify", &f, "--module", "missing"]);
    assert_eq!(o.status.code(), Some(2));

    let o = finmod(&["validate", &dir.path().join("absent.json").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_exit_codes() {
    let o = finmod(&["suite", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failed"] == 0));

    let o = finmod(&["suite", "--fault", "invert-coclosed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PROP-2.5-3"));
}

#[test]
fn exported_corpus_round_trips_through_suite() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    assert_eq!(finmod(&["corpus", "export", &d]).status.code(), Some(0));
    let o = finmod(&["suite", "--corpus", &d, "--format", "json", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 3);
    let builtin: serde_json::Value = serde_json::from_slice(&finmod(&["suite", "--format", "json"]).stdout).unwrap();
    assert!(v["instances"].as_u64() >= builtin["instances"].as_u64());
}
