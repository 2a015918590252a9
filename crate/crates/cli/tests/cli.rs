use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use ncode::verify::Report;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn ncode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncode")).args(args).env_remove("NCODE_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = ncode(&all);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_reports_completeness_and_doublets() {
    let (v, code) = json(&["analyze", &data("non_mic.txt")]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["max_intersection_complete"], false);
    assert_eq!(p["missing_intersections"], serde_json::json!(["10000"]));
    assert_eq!(p["doublet_maximal"], false);
    assert_eq!(p["obstructions"].as_array().unwrap().len(), 0);

    let (v, _) = json(&["analyze", &data("doublet.txt")]);
    assert_eq!(v["payload"]["max_intersection_complete"], true);
    assert_eq!(v["payload"]["doublet_maximal"], true);

    let (v, _) = json(&["analyze", &data("obstructed.txt")]);
    assert_eq!(v["payload"]["obstructions"].as_array().unwrap().len(), 1);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let o = ncode(&["analyze", &data("duplicate.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("duplicate"), "{err}");
    assert_eq!(ncode(&["analyze", "/nonexistent/code.txt"]).status.code(), Some(2));
}

#[test]
fn realize_finds_or_certifies_none() {
    let (v, code) = json(&["realize", "--mode", "convex", &data("chain.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["realizable"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    for mode in ["open", "closed"] {
        let (v, code) = json(&["realize", "--mode", mode, &data("chain.txt")]);
        assert_eq!((v["payload"]["realizable"].clone(), code), (Value::Bool(false), 0));
    }
    let o = ncode(&["realize", "--mode", "open", &data("obstructed.txt")]);
    assert!(stdout(&o).starts_with("none: no open realization exists"));

    let o = ncode(&["realize", "--cap", "2", &data("chain.txt")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn atoms_of_the_six_interval_realization() {
    let o = ncode(&["atoms", &data("six_open.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("010000: {7/2}"), "{text}");
    assert!(text.contains("000100: {15/2}"), "{text}");
}

#[test]
fn convert_round_trip_keeps_the_code() {
    let (v, code) = json(&["convert", "--to", "closed", &data("five_open.json")]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["code_before"], p["code_after"]);
    assert_eq!(p["realization"]["mode"], "closed");
    assert!(p["epsilon_in"].as_str().is_some());

    let closed = scratch("closed.json");
    std::fs::write(&closed, p["realization"].to_string()).unwrap();
    let (back, code) = json(&["convert", "--to", "open", closed.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(back["payload"]["code_after"], p["code_before"]);

    let o = ncode(&["convert", "--to", "closed", closed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mode mismatch"));
}

#[test]
fn map_apply_reports_collapsed_words() {
    let (v, code) = json(&["map", "apply", "--spec", &data("map.json"), &data("chain_mic.json")]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["image"], serde_json::json!(["101", "111"]));
    assert_eq!(p["multiplicities"], serde_json::json!([2, 1]));
    assert_eq!(p["surjective"], true);
}

#[test]
fn census_counts_and_compares() {
    let (v, code) = json(&["census", "--n", "4", "--p", "2"]);
    assert_eq!(code, 0);
    let c = &v["payload"]["census"];
    assert_eq!((c["nrh_total"].as_u64(), c["other_nrh"].as_u64()), (Some(36), Some(24)));

    // a measurement, so a mismatch with the closed form is informational
    let (v, code) = json(&["census", "--n", "6", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["census"]["nrh_total"], 180);
    assert_eq!(v["checks"][0]["informational"], true);

    let o = Command::new(env!("CARGO_BIN_EXE_ncode")).args(["census", "--n", "9", "--p", "3", "--prune"]).env("NCODE_WORKERS", "3").output().unwrap();
    assert!(stdout(&o).contains("neural 189") && stdout(&o).contains("on 3 workers"), "{}", stdout(&o));

    assert_eq!(ncode(&["census", "--n", "11", "--p", "3"]).status.code(), Some(2));
    assert_eq!(ncode(&["census", "--n", "4", "--p", "2", "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn census_of_a_code_file_detects_circulants() {
    let path = scratch("circ42.txt");
    std::fs::write(&path, "0011\n1001\n1100\n0110\n").unwrap();
    let (v, _) = json(&["census", "--code", path.to_str().unwrap(), "--prune"]);
    assert_eq!(v["payload"]["census"]["nrh_total"], 36);
    assert_eq!(v["payload"]["census"]["pruned"], true);
    assert_eq!(v["payload"]["prediction"]["value"], 36);
}

#[test]
fn verify_exit_codes_follow_binding_checks() {
    assert_eq!(ncode(&["verify", "maps"]).status.code(), Some(0));
    assert_eq!(ncode(&["verify", "ring", "--seed", "9"]).status.code(), Some(0));

    let dir = scratch("verify-out");
    let o = ncode(&["verify", "circulant", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL circulant.count_6_3"), "{text}");
    assert!(text.contains("| p | n | formula |"));
    let report = Report::from_json(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert!(!report.passed());
    assert!(std::fs::read_to_string(dir.join("circulant.md")).unwrap().contains("| 3 | 6 | 270 |"));
}

#[test]
fn verify_json_is_deterministic() {
    let run = |w: &str| {
        let o = ncode(&["--json", "--workers", w, "verify", "realization", "--seed", "5"]);
        Report::from_json(&stdout(&o)).unwrap()
    };
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert!(a.passed());
    assert_eq!(a.seed, 5);
}
