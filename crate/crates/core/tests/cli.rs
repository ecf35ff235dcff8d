use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn geocvx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geocvx")).args(args).env_remove("GEOCVX_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn theorem1_small_run_exits_zero() {
    let out = geocvx(&["verify", "theorem1", "--seed", "42", "--polygons", "8", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["suite"], "theorem1");
    assert_eq!(r["verdict"], "no-violation-found");
    assert_eq!(r["seed"], 42);
    assert!(r["timestamp"].is_u64());
}

#[test]
fn contraction_range_is_an_unexpected_outcome() {
    let out = geocvx(&["verify", "theorem1", "--k-range", "0.5,0.9", "--polygons", "20", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["verdict"], "violation");
    assert_eq!(r["params"]["hypothesis_holds"], false);
    let witness = r["runs"].as_array().unwrap().iter().find(|run| run["report"]["verdict"] == "violation").unwrap();
    assert!(witness["report"]["witness"]["margin"].as_f64().unwrap() > 1e-9);
}

#[test]
fn single_counterexample_exits_zero() {
    let out = geocvx(&["verify", "counterexamples", "--case", "h-contract-halfplane"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["runs"].as_array().unwrap().len(), 1);
    assert!(r["worst_margin"].as_f64().unwrap() > 1e-3);
}

#[test]
fn lemma_and_consistency_suites() {
    for args in [
        vec!["verify", "lemma3", "--trials", "20"],
        vec!["verify", "lemma4", "--trials", "20"],
        vec!["verify", "proof-consistency", "--trials", "500", "--model", "spherical"],
    ] {
        let out = geocvx(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn conjecture_scan_records_interpretation() {
    let out = geocvx(&["verify", "conjecture", "--polygons", "3", "--trials", "50", "--k-range", "1,2", "--k2-range", "1,1.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["params"]["interpretation"], "geodesic-polar");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(geocvx(&["verify", "theorem9"]).status.code(), Some(2));
    assert_eq!(geocvx(&["verify", "counterexamples", "--case", "nope"]).status.code(), Some(2));
    assert_eq!(geocvx(&["verify", "theorem1", "--k-range", "2,1"]).status.code(), Some(2));
    assert_eq!(geocvx(&["hull", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(geocvx(&["plot", "region"]).status.code(), Some(2));
    assert_eq!(geocvx(&["verify", "theorem1", "--fd-tol", "-1"]).status.code(), Some(2));
}

#[test]
fn schema_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\n  \"model\": \"hyperbolic\",\n  \"points\": [[0.1, 0.2],\n  [1.2, 0.0]]\n}\n");
    let out = geocvx(&["hull", "--input", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4") && err.contains("unit disk"), "{err}");
}

#[test]
fn hull_commands() {
    let dir = tempfile::tempdir().unwrap();
    // Figure-1 points: 0 and tan(0.45 pi) e^{i pi/6}, e^{i pi/3}
    let r = (0.45 * std::f64::consts::PI).tan();
    let (a, b) = (std::f64::consts::PI / 6.0, std::f64::consts::PI / 3.0);
    let text = format!(r#"{{"model": "spherical", "points": [[0, 0], [{}, {}], [{}, {}]]}}"#, r * a.cos(), r * a.sin(), r * b.cos(), r * b.sin());
    let p = write(dir.path(), "fig1.json", &text);
    let out = geocvx(&["hull", "--input", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 3);

    let one = write(dir.path(), "one.json", r#"{"model": "hyperbolic", "points": [[0.25, -0.5]]}"#);
    let h = json(&geocvx(&["hull", "--input", &one]));
    assert_eq!(h["vertices"], serde_json::json!([[0.25, -0.5]]));

    assert_eq!(geocvx(&["hull", "--input", &one, "--model", "spherical"]).status.code(), Some(2));
}

#[test]
fn dilate_identity_and_range() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", r#"{"model": "hyperbolic", "points": [[0.1, 0.2], [-0.7, 0.3], [0, 0]]}"#);
    let r = json(&geocvx(&["dilate", "--input", &p, "--k", "1", "--center", "0.2,-0.1"]));
    for row in r["results"].as_array().unwrap() {
        assert_eq!(row["input"], row["output"]);
    }
    let s = write(dir.path(), "s.json", r#"{"model": "spherical", "points": [[2.0, 0.0], [0.1, 0.0]]}"#);
    let r = json(&geocvx(&["dilate", "--input", &s, "--k", "2"]));
    assert!(r["results"][0]["output"].is_null());
    assert!(r["results"][0]["error"].as_str().unwrap().contains(">= pi"));
    assert!(r["results"][1]["output"].is_array());
}

#[test]
fn plots_are_written_atomically_and_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", r#"{"model": "hyperbolic", "region": {"kind": "polygon", "vertices": [[0, 0], [0.4, 0], [0.1, 0.35]]}}"#);
    let svg = dir.path().join("tri.svg");
    let out = geocvx(&["plot", "region", "--input", &tri, "--dilate", "0,2", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 6);
    assert!(text.contains(r#"width="800""#));

    let report = dir.path().join("r.json");
    let out = geocvx(&["verify", "theorem1", "--k-range", "0.3,0.6", "--polygons", "5", "--trials", "200", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let w1 = geocvx(&["plot", "suite-witness", "--report", report.to_str().unwrap()]);
    let w2 = geocvx(&["plot", "suite-witness", "--report", report.to_str().unwrap()]);
    assert_eq!(w1.status.code(), Some(0));
    assert_eq!(w1.stdout, w2.stdout);
    // no stray temporary files
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert!(names.iter().all(|n| !n.to_string_lossy().ends_with(".tmp")));
}

#[test]
fn report_round_trips_through_its_schema() {
    let out = geocvx(&["verify", "counterexamples", "--no-timestamp"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: geocvx::verify::SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.to_json().unwrap(), text);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_geocvx"));
        c.args(["verify", "lemma3", "--trials", "3", "--no-timestamp"]);
        match env {
            Some(v) => c.env("GEOCVX_SEED", v),
            None => c.env_remove("GEOCVX_SEED"),
        };
        serde_json::from_slice::<Value>(&c.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(None)["seed"], 2019);
    assert_eq!(run(Some("77"))["seed"], 77);
}
