use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cm-verify"));
    c.env_remove("CM_VERIFY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn density_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let out = run(&["density", "--s", "0:50:501", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,w,err");
    assert_eq!(lines.len(), 502);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, [0.0, 0.0, 0.0]);
    for l in &lines[1..] {
        let cols: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(cols[1] >= 0.0 && cols[1] <= 2.0);
        // 17 significant digits
        assert_eq!(l.split(',').nth(1).unwrap().split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
    }
}

#[test]
fn density_log_and_json() {
    let out = run(&["density", "--s", "0.001:100:9", "--log", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "density");
    assert_eq!(v["entries"].as_array().unwrap().len(), 9);
    let w0 = v["entries"][0]["computed"].as_f64().unwrap();
    assert!((w0 / 1e-3 / std::f64::consts::FRAC_2_PI - 1.0).abs() < 0.01);
    assert!(run(&["density", "--s", "0:1:3", "--log"]).status.code() == Some(2));
}

#[test]
fn representation_example() {
    let out = run(&["verify-representation", "--x", "0.1,1,10", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.iter().filter(|e| e["name"].as_str().unwrap().starts_with("g(x=")).count(), 3);
    assert_eq!(v["pass"], true);
    assert!(v["seconds"].is_null());
}

#[test]
fn refutation_report() {
    let out = run(&["refute-stieltjes"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"verdict not Stieltjes"));
    assert!(names.iter().any(|n| n.starts_with("witness") && n.ends_with("n=3")));
}

#[test]
fn exit_code_one_on_failed_checks() {
    // arctan is not a Bernstein function
    assert_eq!(run(&["check-bernstein"]).status.code(), Some(1));
    // no witness above the sign change
    let out = run(&["refute-stieltjes", "--x", "1,2,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
    // a tolerance no quadrature can meet
    assert_eq!(run(&["verify-representation", "--x", "1", "--tol", "1e-300"]).status.code(), Some(1));
}

#[test]
fn exit_code_two_on_usage_and_io_errors() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--s", "5:1:10"]).status.code(), Some(2));
    assert_eq!(run(&["verify-contour", "--x", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["check-cm", "--max-order", "25"]).status.code(), Some(2));
    assert_eq!(run(&["check-cm", "--function", "sin"]).status.code(), Some(2));
    let missing = Path::new("/nonexistent-dir/out.json");
    assert_eq!(run(&["refute-stieltjes", "--out", missing.to_str().unwrap()]).status.code(), Some(2));
    let out = bin().env("CM_VERIFY_THREADS", "zero").arg("refute-stieltjes").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suites_pass_with_defaults() {
    for cmd in ["verify-contour", "verify-identities", "check-cm"] {
        let out = run(&[cmd]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
    }
    let out = run(&["check-bernstein", "--function", "one-minus-exp-neg", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("name,target,computed,tol,pass\n"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let one = bin().env("CM_VERIFY_THREADS", "1").arg("report-all").output().unwrap();
    let many = bin().env("CM_VERIFY_THREADS", "4").arg("report-all").output().unwrap();
    let default = run(&["report-all"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&run(&["refute-stieltjes", "--timing"]));
    assert!(v["seconds"].as_f64().unwrap() >= 0.0);
}
