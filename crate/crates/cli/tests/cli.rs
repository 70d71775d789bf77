use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsymbol")).args(args).env("NO_COLOR", "1").output().expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(s: &JSONSchema, v: &Value, what: &str) {
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what}: {msgs:#?}");
    }
}

/// Runs a command, checks its exit status and validates the envelope and payload.
fn json(args: &[&str], status: i32) -> Value {
    let out = bin(args);
    assert_eq!(out.status.code(), Some(status), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert_valid(&schema("envelope"), &v, "envelope");
    let kind = v["kind"].as_str().unwrap();
    assert_valid(&schema(kind), &v["result"], kind);
    assert_eq!(v["ok"], Value::Bool(status == 0));
    v
}

#[test]
fn worked_example_word() {
    let v = json(&["spectrum", "--word", "01001000100", "--b", "3"], 0);
    assert_eq!(v["result"]["weights"][0]["weight"], 9);
    assert_eq!(v["result"]["run_distribution"]["3"], 2);
    let v = json(&["spectrum", "--word", "01001000100"], 0);
    let w: Vec<u64> = v["result"]["weights"].as_array().unwrap().iter().map(|x| x["weight"].as_u64().unwrap()).collect();
    assert_eq!(&w[..4], &[3, 6, 9, 11]);
}

#[test]
fn hamming_code_spectra() {
    let v = json(&["spectrum", "--q", "2", "--n", "7", "--gen", "1101", "--b", "5"], 0);
    assert_eq!(v["result"]["spectra"][0]["weights"], serde_json::json!([7]));
    let v = json(&["spectrum", "--q", "2", "--n", "7", "--gen", "1101", "--b", "1-2", "--distances"], 0);
    assert_eq!(v["result"]["spectra"][0]["weights"], serde_json::json!([3, 4, 7]));
    assert_eq!(v["result"]["distances"][0]["distances"], serde_json::json!([3, 4, 7]));
}

#[test]
fn code_json_matches_flags() {
    let flags = json(&["spectrum", "--q", "2", "--n", "7", "--gen", "1101"], 0);
    let inline = json(&["spectrum", "--code", r#"{"type":"cyclic","q":2,"n":7,"generator_poly":[1,1,0,1]}"#], 0);
    assert_eq!(flags, inline);
}

#[test]
fn bounds_examples() {
    let v = json(&["bounds", "--q", "2", "--n", "5", "--gen", "1", "--b", "2"], 0);
    let entries = v["result"]["reports"][0]["entries"].as_array().unwrap();
    let delta = entries.iter().find(|e| e["name"] == "delta").unwrap();
    assert_eq!(delta["value"], 4);
    let v = json(&["bounds", "--q", "7", "--n", "6", "--defining-set", "1,2,3,4"], 0);
    for r in v["result"]["reports"].as_array().unwrap() {
        let floor = r["entries"].as_array().unwrap().iter().find(|e| e["name"] == "distance_floor").unwrap();
        assert_eq!(floor["value"], 3);
    }
    json(&["bounds", "--p", "3", "--matrix", "1012;0111"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["spectrum", "--q", "2", "--n", "7", "--gen", "1x01"]).status.code(), Some(2));
    assert_eq!(bin(&["spectrum", "--q", "2", "--n", "7"]).status.code(), Some(2));
    assert_eq!(bin(&["spectrum", "--q", "2", "--n", "8", "--gen", "11"]).status.code(), Some(2));
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
    let capped = bin(&["spectrum", "--q", "2", "--n", "63", "--defining-set", "1,3,5,7,9,11,13", "--b", "1", "--cap", "1000"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn constructions_certify() {
    json(&["construct", "singer-set", "--q", "3", "--m", "3"], 0);
    json(&["construct", "singer-code", "--q", "4", "--b", "2"], 0);
    json(&["construct", "golomb", "--m", "6", "--b", "3"], 0);
    json(&["construct", "mws", "--k", "3", "--q", "2"], 0);
    json(&["construct", "mbsw", "--k", "2", "--q", "3", "--b", "2"], 0);
    json(&["construct", "symplectic", "--k", "2", "--q", "3"], 0);
    let v = json(&["construct", "spread", "--q", "2", "--n", "7", "--gen", "1101", "--b", "2"], 0);
    assert_eq!(v["result"]["n"], 14);
}

#[test]
fn gauss_tables() {
    let v = json(&["gauss", "--Q", "16", "--N", "3", "--b", "2"], 0);
    assert_eq!(v["result"]["certificate"]["mismatches"], 0);
    assert_eq!(v["result"]["certificate"]["betas_checked"], 15);
    let v = json(&["gauss", "--Q", "16", "--N", "3", "--b", "4"], 0);
    assert_eq!(v["result"]["weights_from"], "b_at_least_m0");
    assert_eq!(v["result"]["class_weights"], serde_json::json!([5, 5, 5]));
}

#[test]
fn verify_passes() {
    let v = json(&["verify", "--worked-example", "--three-way", "--symplectic", "--samples", "300"], 0);
    assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn sweep_is_deterministic_across_workers() {
    let args = ["sweep", "--q", "2,3", "--n-max", "10", "--gauss", "--gauss-q-max", "64"];
    let one = json(&args, 0);
    let mut more = args.to_vec();
    more.extend(["--workers", "4"]);
    let mut four = json(&more, 0);
    four["result"]["config"]["workers"] = one["result"]["config"]["workers"].clone();
    assert_eq!(one, four);
    assert_eq!(one["result"]["theta_equality_rate"], 1.0);
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("bsymbol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"command": "spectrum", "q": 2, "n": 7, "gen": "1101", "b": 1}"#).unwrap();
    let p = path.display().to_string();
    let v = json(&["--config", &p], 0);
    assert_eq!(v["result"]["spectra"][0]["b"], 1);
    let v = json(&["--config", &p, "--b", "5"], 0);
    assert_eq!(v["result"]["spectra"][0]["weights"], serde_json::json!([7]));
}

#[test]
fn other_formats() {
    let out = bin(&["spectrum", "--q", "2", "--n", "7", "--gen", "1101", "--b", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("path,value\n"));
    assert!(text.contains("result.spectra.0.weights,3 4 7"));
    let out = bin(&["spectrum", "--q", "2", "--n", "7", "--gen", "1101", "--b", "1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("spectrum (PASS)"));
    assert!(!text.contains('\x1b'));
}
