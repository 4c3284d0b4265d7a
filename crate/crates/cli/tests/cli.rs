use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn graphsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphsep"))
        .args(args)
        .env_remove("GRAPHSEP_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn c4_at_threshold_is_biseparable() {
    let out = graphsep(&["classify", "--builtin", "C4", "--white-noise", "5/13"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "BISEPARABLE");
    assert_eq!(v["threshold"], "5/13");
    assert_eq!(v["certificate"]["kind"], "decomposition");
}

#[test]
fn r5_above_threshold_is_gme() {
    let out = graphsep(&["classify", "--builtin", "R5", "--white-noise", "0.40"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "GME");
    assert_eq!(v["certificate"]["kind"], "witness");
}

#[test]
fn pure_c4_is_gme() {
    let out = graphsep(&["classify", "--builtin", "C4", "--white-noise", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--builtin", "Y5", "--white-noise", "9/25"];
    assert_eq!(graphsep(&args).stdout, graphsep(&args).stdout);
}

#[test]
fn thresholds() {
    for (name, expected) in [("C4", "5/13"), ("Y5", "9/25")] {
        let out = graphsep(&["threshold", "--builtin", name, "--points", "4"]);
        assert_eq!(out.status.code(), Some(0));
        let v = stdout_json(&out);
        assert_eq!(v["threshold"], expected);
        assert_eq!(v["sweep"].as_array().unwrap().len(), 5);
    }
    let v = stdout_json(&graphsep(&["threshold", "--builtin", "C6", "--points", "0"]));
    assert_eq!((v["lower"].as_str(), v["upper"].as_str()), (Some("11/43"), Some("51/179")));
    assert!(v.get("threshold").is_none());
}

#[test]
fn malformed_json_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\"graph\": ");
    let out = graphsep(&["classify", "--state", &path]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unnormalized_state_exits_65() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "s.json",
        r#"{"graph": "C4", "lambda": {"++++": "1/2", "-+++": "1/3"}}"#,
    );
    let out = graphsep(&["classify", "--state", &path]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn qubit_cap_is_enforced() {
    let out = graphsep(&["classify", "--builtin", "C7", "--white-noise", "1/2"]);
    assert_eq!(out.status.code(), Some(69));
    let out = Command::new(env!("CARGO_BIN_EXE_graphsep"))
        .args(["graph", "--builtin", "C4"])
        .env("GRAPHSEP_MAX_QUBITS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(69));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(graphsep(&["classify"]).status.code(), Some(64));
    assert_eq!(graphsep(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn emitted_certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let out = graphsep(&[
        "classify",
        "--builtin",
        "C5",
        "--white-noise",
        "1/2",
        "--emit-witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&w).unwrap();
    let witness = graphsep::json::witness_from_json(&graphsep::json::parse(&text).unwrap()).unwrap();
    assert!(graphsep::witness::validate_witness(&witness).unwrap().is_valid());

    let d = dir.path().join("d.json");
    let out = graphsep(&[
        "classify",
        "--builtin",
        "C5",
        "--white-noise",
        "1/5",
        "--emit-decomposition",
        d.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&d).unwrap();
    let dec = graphsep::json::decomposition_from_json(&graphsep::json::parse(&text).unwrap()).unwrap();
    let g = graphsep::Graph::builtin("C5").unwrap();
    let s = graphsep::GraphDiagonalState::white_noise(g, &graphsep::rational::rat(1, 5)).unwrap();
    assert!(graphsep::verify_decomposition(&dec, &s).is_valid());
}

#[test]
fn state_file_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "s.json",
        r#"{"graph": {"n": 3, "edges": [[1, 2], [1, 3]]}, "lambda": {"+++": "3/4", "---": "1/4"}}"#,
    );
    let out = graphsep(&["classify", "--state", &path]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn restricted_mixture_on_y5() {
    let out = graphsep(&["classify", "--builtin", "Y5", "--white-noise", "1/3", "--restrict-1bp"]);
    assert_eq!(out.status.code(), Some(0));
    let out = graphsep(&["pptmix", "--builtin", "Y5", "--white-noise", "1/2", "--restrict-1bp"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["feasible"], false);
}

#[test]
fn pptmix_writes_lp_file() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("p.lp");
    let out = graphsep(&[
        "pptmix",
        "--builtin",
        "GHZ3",
        "--white-noise",
        "1/5",
        "--lp-file",
        lp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&lp).unwrap().starts_with("\\ PPT-mixture"));
}

#[test]
fn witness_catalogue() {
    let out = graphsep(&["witness", "--builtin", "Y5", "--white-noise", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["witnesses"][0]["name"], "W_Y5");
    assert_eq!(v["witnesses"][0]["valid"], true);
    let out = graphsep(&["witness", "--builtin", "C4", "--name", "W2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["witnesses"].as_array().unwrap().len(), 64);
}

#[test]
fn graph_oracle_report() {
    let out = graphsep(&["graph", "--builtin", "GHZ4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["oracle"]["consistent"], true);
    assert!(v["oracle"]["max_deviation"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["family"], "star4");
}

#[test]
fn float_rendering() {
    let out = graphsep(&["classify", "--builtin", "C4", "--white-noise", "5/13", "--float"]);
    let v = stdout_json(&out);
    assert!((v["threshold"].as_f64().unwrap() - 5.0 / 13.0).abs() < 1e-15);
}
