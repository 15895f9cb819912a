use std::process::{Command, Output};

use serde_json::Value;

fn repi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repi")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../docs/schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(json: &str) -> Value {
    let v: Value = serde_json::from_str(json).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    v
}

fn value_of(csv: &str, alpha: &str, method: &str) -> f64 {
    csv.lines()
        .find(|l| l.starts_with(&format!("{alpha},{method},")))
        .unwrap_or_else(|| panic!("no {alpha},{method} row in\n{csv}"))
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn constants_near_order_one() {
    let out = repi(&["constants", "--alpha-grid", "log:1.001:1000:50", "--n", "2,3,10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first: Vec<&str> = text.lines().skip(1).take_while(|l| l.starts_with("1.001,")).collect();
    assert_eq!(first.len(), 4);
    for line in first {
        let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((v - 1.0).abs() <= 2e-3, "{line}");
    }
}

#[test]
fn compare_reproduces_both_scenarios() {
    let out = repi(&["compare", "--powers", "40,40,40", "--alpha-grid", "1.5,2,10,1000"]);
    let text = stdout(&out);
    for a in ["1.5", "2", "10", "1000"] {
        assert!((value_of(&text, a, "thm1") - value_of(&text, a, "thm2")).abs() < 1e-9);
    }

    let out = repi(&["compare", "--powers", "10,20,90", "--alpha-grid", "2,10000"]);
    let text = stdout(&out);
    assert!((value_of(&text, "10000", "thm2") / 90.0 - 1.0).abs() < 0.01);
    assert_eq!(value_of(&text, "10000", "bv"), 90.0);
    // for large orders the max rule beats the n-dependent constant
    assert!(value_of(&text, "10000", "bv") > value_of(&text, "10000", "thm1"));
}

#[test]
fn filter_example_values() {
    let out = repi(&["filter", "--taps", "2,-1,-1", "--dim", "1", "--alpha", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let expected = [
        ("thm2", 0.8195),
        ("thm1", 0.7866),
        ("bc", 0.7425),
        ("bv", 2f64.ln()),
        ("gaussian", 0.8959),
    ];
    for (method, want) in expected {
        assert!((value_of(&text, "2", method) - want).abs() < 5e-4, "{method}");
    }
}

#[test]
fn json_matches_schema() {
    for args in [
        &["constants", "--alpha-grid", "2,inf", "--format", "json"][..],
        &["compare", "--powers", "10,20,90", "--alpha", "inf", "--format", "json"],
        &["filter", "--taps", "2,1,1", "--format", "json"],
        &["verify", "--corpus", "two-uniforms", "--format", "json"],
    ] {
        let out = repi(args);
        assert!(out.status.success(), "{args:?}");
        let v = assert_valid(&stdout(&out));
        assert!(!v["rows"].as_array().unwrap().is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.csv"))).collect();
    for p in &paths {
        let out = repi(&[
            "verify",
            "--seed",
            "5",
            "--instances",
            "6",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("instance,alpha,method,value\n"));
    assert_eq!(text.lines().count(), 1 + 6 * 5);
    assert!(!text.contains('\r'));
}

#[test]
fn verify_default_corpus_is_clean() {
    let out = repi(&["verify", "--seed", "1", "--instances", "20"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn two_uniforms_at_infinity() {
    let out = repi(&["verify", "--corpus", "two-uniforms", "--alpha", "inf"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out).lines().nth(1).unwrap().to_string();
    assert!(line.starts_with("0,inf,ratio,"));
    let ratio: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 0.5).abs() < 1e-3);
}

#[test]
fn density_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let rows: String = (0..=256).map(|k| format!("{},1\n", k as f64 / 256.0)).collect();
    std::fs::write(&path, format!("x,f\n{rows}")).unwrap();
    let p = path.to_str().unwrap();
    let out = repi(&["verify", "--density", p, "--density", p, "--alpha", "inf"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ratio = value_of(&stdout(&out).replace("0,inf,", "inf,"), "inf", "ratio");
    assert!((ratio - 0.5).abs() < 5e-3);

    let out = repi(&["verify", "--density", p]);
    assert_eq!(out.status.code(), Some(2));
    let out = repi(&["verify", "--density", p, "--density", "/nonexistent.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--instances", "0"][..],
        &["compare"],
        &["compare", "--powers", "abc"],
        &["constants", "--alpha", "0.5"],
        &["constants", "--alpha", "2", "--alpha-grid", "2,3"],
        &["filter", "--taps", "1", "--format", "xml"],
        &["nonsense"],
    ] {
        let out = repi(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
