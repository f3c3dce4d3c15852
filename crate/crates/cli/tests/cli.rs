use std::path::PathBuf;
use std::process::{Command, Output};

use g2t_core::exterior::{parse_form, Frame};
use g2t_core::liealg::parse_salamon;
use serde_json::Value;

fn structure(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../structures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2t")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = run(&all);
    let doc = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    (out.status.code().unwrap(), doc)
}

fn data<'a>(doc: &'a Value, key: &str) -> &'a Value {
    &doc["data"][key]
}

#[test]
fn iwasawa_report() {
    let path = structure("iwasawa.su3");
    let (code, doc) = structured(&["g2t", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(data(&doc, "theta"), "0");
    assert_eq!(data(&doc, "inner_dphi_star_phi"), "8");
    let t = parse_form(data(&doc, "T").as_str().unwrap(), Frame::SEVEN).unwrap();
    let expected = parse_form("4/3*127 + 4/3*347 - 8/3*567 + 1/3*135 - 1/3*146 - 1/3*236 - 1/3*245", Frame::SEVEN).unwrap();
    assert_eq!(t, expected);
    assert_eq!(data(&doc, "strong"), false);
}

#[test]
fn family_reports_pass() {
    for f in ["case1.su3", "case2.su3", "case3.su3"] {
        let path = structure(f);
        let (code, doc) = structured(&["g2t", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{f}: {doc}");
        assert_eq!(data(&doc, "theta"), "7", "{f}");
        assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn params_override_file_bindings() {
    let path = structure("case3.su3");
    let (_, doc) = structured(&["g2t", path.to_str().unwrap(), "--param", "λ=3"]);
    assert_eq!(data(&doc, "theta"), "3*7");
    assert_eq!(data(&doc, "lambda"), "3");
}

#[test]
fn su3_report() {
    let path = structure("iwasawa.su3");
    let (code, doc) = structured(&["su3", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(data(&doc, "w1_plus"), "2/3");
    assert_eq!(data(&doc, "d_psi_plus"), "4*1234");
    assert_eq!(data(&doc, "half_integrable"), false);
}

#[test]
fn betti_of_l24() {
    let (code, doc) = structured(&["betti", "0,0,0,12,13,23"]);
    assert_eq!(code, 0);
    assert_eq!(data(&doc, "b1"), 3);
    assert_eq!(data(&doc, "b2"), 8);
}

#[test]
fn betti_of_family_with_params() {
    let (code, doc) = structured(&["betti", "case1", "--param", "lam=2", "--param", "k=3"]);
    assert_eq!(code, 0);
    assert_eq!(data(&doc, "b1"), 2);
    assert_eq!(data(&doc, "b2"), 4);
}

#[test]
fn fingerprint_round_trips_algebra() {
    let (code, doc) = structured(&["fingerprint", "l7-"]);
    assert_eq!(code, 0);
    let printed = data(&doc, "algebra").as_str().unwrap();
    assert_eq!(parse_salamon(printed).unwrap().to_string(), printed);
    assert!(data(&doc, "fingerprint").as_str().unwrap().contains("Quadratic(Positive)"));
}

#[test]
fn theorem_table() {
    let (code, doc) = structured(&["theorem"]);
    let rows = data(&doc, "rows").as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let failing: Vec<&str> = rows
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["entry"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["l15-"]);
    assert_eq!(code, 1);
    assert_eq!(doc["passed"], false);
}

#[test]
fn contraction_direction_is_reported() {
    let (code, doc) = structured(&["contract", "l7-", "--exponents", "-1,1,0,-1,1,-2", "--target", "l6"]);
    assert_eq!(code, 0);
    assert_eq!(data(&doc, "direction"), "infinity");
    assert_eq!(data(&doc, "limit"), "(0,0,12,13,23,14)");
    let (code, _) = structured(&["contract", "l7-", "--exponents", "-1,1,0,-1,1,-2", "--direction", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn syntax_error_exits_two_with_position() {
    let out = run(&["check", "0,0,12,13,23,14+"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 16"));
}

#[test]
fn jacobi_failure_exits_one() {
    let (code, doc) = structured(&["check", "0,0,12,0,0,13+34"]);
    assert_eq!(code, 1);
    assert_eq!(doc["checks"][0]["name"], "jacobi");
    assert_eq!(doc["checks"][0]["passed"], false);
}

#[test]
fn bad_param_exits_two() {
    assert_eq!(run(&["betti", "l6", "--param", "lam"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["g2t", "/nonexistent.su3"]).status.code(), Some(2));
}

#[test]
fn text_and_structured_agree() {
    let text = String::from_utf8(run(&["check", "iwasawa"]).stdout).unwrap();
    let (_, doc) = structured(&["check", "iwasawa"]);
    assert_eq!(text.contains("result: PASS"), doc["passed"] == true);
    assert_eq!(text.matches("PASS ").count(), doc["checks"].as_array().unwrap().len());
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--seed", "11", "--cases", "25"]);
    let b = run(&["selftest", "--seed", "11", "--cases", "25"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
