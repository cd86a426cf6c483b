use std::process::{Command, Output};

use serde_json::Value;

fn pvi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = pvi(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn classify_three_solution_case() {
    let (code, v) = json(&["classify", "--pvi", "1/8,-1/8,1/8,3/8"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "finite_list");
    assert_eq!(v["curves"], serde_json::json!(["A", "B", "C"]));
    assert_eq!(v["alpha"], serde_json::json!(["1/8", "1/8", "1/8", "1/8"]));
}

#[test]
fn classify_picard_and_empty() {
    let (code, v) = json(&["classify", "--alpha", "0,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "picard_family");
    assert!(v["picard_note"].is_string());

    let (code, v) = json(&["classify", "--alpha", "1,2,3,4", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "empty");
    let checks = v["verification"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert!(checks.iter().all(|c| c["max_residual"].as_f64().unwrap() > 1e-3));
}

#[test]
fn orbit_queries() {
    let (code, v) = json(&["orbit", "--mu", "1/4", "--nu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 2);
    assert_eq!(v["curve"], "A");
    assert_eq!(v["elements"], serde_json::json!([["1/4", "0"], ["1/4", "1/2"]]));

    let (_, v) = json(&["orbit", "--denominator", "6"]);
    assert_eq!(v["partition"], serde_json::json!([4, 4, 4]));

    let (_, v) = json(&["orbit", "--mu", "1/5", "--nu", "0"]);
    assert_eq!(v["size"], 12);
    assert!(v["curve"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["orbit", "--mu", "1/2", "--nu", "0"],
        vec!["orbit", "--denominator", "1"],
        vec!["classify", "--alpha", "1/0,1,1,1"],
        vec!["classify", "--alpha", "1,1,1"],
        vec!["classify", "--alpha", "1,1,1,1", "--pvi", "1,1,1,1"],
        vec!["classify", "--alpha", "1,1,1,1", "--unknown"],
        vec!["classify"],
        vec!["derive-quartics", "--format", "csv"],
        vec!["verify", "--curve", "Q", "--alpha", "1,1,1,1"],
    ] {
        assert_eq!(pvi(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes_and_csv() {
    let out = pvi(&["verify", "--curve", "D", "--pvi", "9/8,-1/8,1/8,3/8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["max_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["verdict"], "accepted");

    let out = pvi(&["verify", "--curve", "A", "--alpha", "9,1,1,1", "--format", "csv", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_re,t_im,y_re,y_im,residual"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn eval_picard_reports_residuals() {
    let (code, v) = json(&[
        "eval-picard", "--mu", "1/4", "--nu", "0", "--tau-re", "0.1", "--tau-im", "1.2", "--alpha", "1,1,2,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["curve"], "A");
    assert!(v["curve_residual"].as_f64().unwrap() < 1e-10);
    assert!(v["master_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(pvi(&["eval-picard", "--mu", "1/4", "--nu", "0", "--tau-re", "0", "--tau-im", "-1"]).status.code(), Some(2));
}

#[test]
fn derive_quartics_matches_catalog() {
    let (code, v) = json(&["derive-quartics"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_match"], true);
    assert_eq!(
        v["quartics"]["D"]["poly"]["text"],
        "3 * y^4 - 4 * y^3 * t - 4 * y^3 + 6 * y^2 * t - 1 * t^2"
    );
}

#[test]
fn selftest_passes_and_catches_typo() {
    let (code, v) = json(&["selftest", "--json"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    assert!(checks.iter().all(|c| c["passed"] == true));

    let (code, v) = json(&[
        "selftest", "--json", "--curve-override", "D=3*y^4 - 4*t*y^3 - 4*y^3 + 6*t*y^2 - 2*t^2",
    ]);
    assert_eq!(code, 1);
    let quartic = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "tripling_quartics")
        .unwrap();
    assert_eq!(quartic["passed"], false);
}

#[test]
fn json_output_is_byte_identical() {
    for args in [
        vec!["classify", "--alpha", "9/8,1/8,1/8,1/8", "--verify"],
        vec!["orbit", "--denominator", "5"],
        vec!["selftest", "--json"],
    ] {
        assert_eq!(pvi(&args).stdout, pvi(&args).stdout, "{args:?}");
    }
}
