use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzeta")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_valid(schema_file: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema_file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}");
}

#[test]
fn cubic_formula_latex() {
    let out = hzeta(&["formula", "--e", "3", "--f", "1", "--output", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("\\frac{1 + p^{6-3s} + p^{7-5s} + p^{12-6s} + p^{13-8s} + p^{19-11s}}"), "{text}");
    for factor in ["(1-p^{8-7s})", "(1-p^{14-8s})", "(1-p^{18-9s})", "(1-p^{-s})", "(1-p^{5-s})"] {
        assert!(text.contains(factor), "missing {factor}");
    }
}

#[test]
fn funeq_for_biquadratic_shape() {
    let out = hzeta(&["check", "funeq", "--e", "2", "--f", "2", "--output", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_valid("check.schema.json", &v);
    assert_eq!(v["funeq"]["sign"], 1);
    assert_eq!(v["funeq"]["x_exponent"], 66);
    assert_eq!(v["funeq"]["y_exponent"], 24);
    assert_eq!(v["funeq"]["holds"], true);

    let text = stdout(&hzeta(&["check", "funeq", "--e", "2", "--f", "2"]));
    assert!(text.contains("PASS") && text.contains("sign +1, X-exponent 66, Y-exponent 24"), "{text}");
}

#[test]
fn series_of_rational_heisenberg_group() {
    let out = hzeta(&["series", "--e", "1", "--f", "1", "--p", "2", "--terms", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1, 3, 7, 19, 43, 91, 203\n");
}

#[test]
fn variants_agree_on_series() {
    let base = stdout(&hzeta(&["series", "--e", "1", "--f", "3", "--p", "3", "--terms", "5"]));
    for variant in ["snf", "inert"] {
        let other = stdout(&hzeta(&["series", "--e", "1", "--f", "3", "--p", "3", "--terms", "5", "--variant", variant]));
        assert_eq!(base, other, "{variant}");
    }
    let base = stdout(&hzeta(&["series", "--e", "3", "--f", "1", "--p", "2", "--terms", "5"]));
    let other = stdout(&hzeta(&["series", "--e", "3", "--f", "1", "--p", "2", "--terms", "5", "--variant", "totram"]));
    assert_eq!(base, other);
}

#[test]
fn every_check_suite_passes() {
    for suite in ["funeq", "consistency", "coxeter", "lemmas"] {
        for (e, f) in [("1", "1"), ("2", "1"), ("1", "3"), ("2", "2")] {
            let out = hzeta(&["check", suite, "--e", e, "--f", f, "--output", "json"]);
            assert!(out.status.success(), "{suite} e={e} f={f}");
            let v = json_of(&out);
            assert_valid("check.schema.json", &v);
            assert_eq!(v["passed"], true);
        }
    }
    let out = hzeta(&["check", "lemmas", "--e", "1", "--f", "2", "--p", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no rational points"));
}

#[test]
fn oracle_agrees_with_formula() {
    let out = hzeta(&["oracle", "--e", "2", "--f", "1", "--p", "2", "--terms", "4", "--seed", "7", "--output", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_valid("oracle.schema.json", &v);
    let series = v["series"].as_array().unwrap();
    assert_eq!(series.len(), 5);
    assert!(series.iter().all(|r| r["match"] == true && r["seed"] == 7));
    assert_eq!(series[4]["oracle_count"], "12051");
    assert_eq!(v["xlambda"]["trials"], 100);
    assert_eq!(v["xlambda"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn json_outputs_match_schemas() {
    let formula = hzeta(&["formula", "--e", "2", "--f", "2", "--variant", "snf", "--output", "json"]);
    assert_valid("formula.schema.json", &json_of(&formula));
    let series = hzeta(&["series", "--e", "2", "--f", "1", "--p", "5", "--terms", "4", "--output", "json"]);
    let v = json_of(&series);
    assert_valid("series.schema.json", &v);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 5);
}

#[test]
fn formula_json_round_trips() {
    let out = hzeta(&["formula", "--e", "1", "--f", "2", "--output", "json"]);
    let v = json_of(&out);
    let rf = hzeta::polyrat::ProductRationalFunction::from_json(&v).unwrap();
    let direct = hzeta::zeta_formulas::zeta_main(hzeta::zeta_formulas::ExtensionShape::new(1, 2).unwrap()).unwrap();
    assert!(rf.rf_equal(&direct));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["oracle", "--e", "1", "--f", "2", "--p", "3", "--terms", "3", "--seed", "11", "--output", "json"],
        vec!["check", "lemmas", "--e", "3", "--f", "1", "--p", "5", "--seed", "3"],
        vec!["formula", "--e", "2", "--f", "3", "--output", "json"],
    ];
    for args in runs {
        let a = hzeta(&args);
        let b = hzeta(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 7] = [
        &["formula", "--e", "2", "--f", "2", "--variant", "inert"],
        &["formula", "--e", "2", "--f", "2", "--variant", "totram"],
        &["formula", "--e", "0", "--f", "1"],
        &["series", "--e", "1", "--f", "1", "--p", "4", "--terms", "3"],
        &["series", "--e", "1", "--f", "1", "--p", "2", "--terms", "3", "--output", "latex"],
        &["formula", "--e", "1"],
        &["check", "nonsense", "--e", "1", "--f", "1"],
    ];
    for args in cases {
        assert_eq!(hzeta(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn capacity_errors_exit_with_three() {
    let out = hzeta(&["oracle", "--e", "2", "--f", "2", "--p", "3", "--terms", "6", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(err["error"], "capacity");
    assert_eq!(err["limit"], "1000");
    assert!(err["what"].is_string() && err["requested"].is_string());

    let out = hzeta(&["formula", "--e", "3", "--f", "3"]);
    assert_eq!(out.status.code(), Some(3));
}
