use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_double-ell"));
    cmd.args(args);
    match workers {
        Some(w) => cmd.env("DOUBLE_ELL_WORKERS", w),
        None => cmd.env_remove("DOUBLE_ELL_WORKERS"),
    };
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_prints_json() {
    let out =
        run(&["eval", "--method", "psi", "--s1", "2", "--s2", "2.5+5i", "--modulus", "3", "--chi1", "1", "--chi2", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["method"], "psi-series");
    assert!(v["value"]["re"].as_f64().unwrap().is_finite());
}

#[test]
fn domain_errors_exit_one() {
    let out = run(
        &["eval", "--method", "direct", "--s1", "0.5", "--s2", "0.5+10i", "--modulus", "3", "--chi1", "1", "--chi2", "1"],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].as_str().unwrap().contains("domain"));
    let out = run(&["verify", "--suite", "nope", "--config", "missing.json"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_worker_count_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let config = format!(
        r#"{{"moduli": [3], "character_filter": "all-primitive-pairs", "s1_grid": [[2, 0]], "s2_grid": [[2.5, 5]],
            "quantity": "value", "output_path": {:?}}}"#,
        csv.to_string_lossy()
    );
    let path = write(dir.path(), "sweep.json", &config);
    assert_eq!(run(&["sweep", "--config", &path], Some("0")).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--config", &path], Some("2")).status.code(), Some(0));
    assert!(csv.exists());
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let base = r#""moduli": [5, 7], "character_filter": "all-primitive-pairs", "tau": [100, 1000],
                  "xi": ["sqrt-tau", "tau"], "quantity": "hyperbola-sum""#;
    let pass = write(dir.path(), "pass.json", &format!("{{{base}}}"));
    let out = run(&["verify", "--suite", "lemma21", "--config", &pass, "--summary-only"], Some("2"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "pass");

    let strict = write(dir.path(), "strict.json", &format!(r#"{{{base}, "thresholds": {{"max_constant": 1e-6}}}}"#));
    let out = run(&["verify", "--suite", "lemma21", "--config", &strict, "--summary-only"], Some("2"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "bound-violation");
}

#[test]
fn sweep_csv_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for workers in ["1", "4"] {
        let csv = dir.path().join(format!("w{workers}.csv"));
        let config = format!(
            r#"{{"moduli": [3, 5], "character_filter": "all-primitive-pairs", "s1_grid": [[1, 0]],
                "s2_grid": [{{"sigma": 0.5, "start": 10, "ratio": 2, "count": 3}}], "quantity": "mainterm-residual",
                "output_path": {:?}}}"#,
            csv.to_string_lossy()
        );
        let path = write(dir.path(), &format!("w{workers}.json"), &config);
        assert_eq!(run(&["sweep", "--config", &path], Some(workers)).status.code(), Some(0));
        texts.push(std::fs::read(&csv).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let out = run(&["fit", "--input", &dir.path().join("w1.csv").to_string_lossy(), "--y", "abs_residual"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["n_points"], 30);
}

#[test]
fn character_listing() {
    let out = run(&["char", "list", "--modulus", "8", "--primitive-only"], None);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);
    let out = run(&["char", "gauss", "--modulus", "4", "--label", "1"], None);
    let v = json(&out);
    assert!((v["gauss_im"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}
