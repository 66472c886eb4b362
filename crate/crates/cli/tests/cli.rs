use std::process::{Command, Output};

use serde_json::Value;

fn intmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intmat"))
        .args(args)
        .env_remove("INTMAT_BUDGET_MB")
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = intmat(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    intmat(args).status.code().expect("exited")
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn count_k1_singular() {
    let out = ok(&["count", "--property", "singular", "--n", "2", "--k", "1"]);
    assert_eq!(
        out,
        "property,n,k,count,total,probability\nsingular,2,1,33,81,0.407407407407\n"
    );
}

#[test]
fn lambda_beyond_gershgorin_is_zero() {
    let out = ok(&["count", "--property", "lambda-eig", "--lambda", "5", "--n", "2", "--k", "2"]);
    assert_eq!(rows(&out)[1][3], "0");
    let out = ok(&["count", "--property", "lambda-eig", "--lambda", "-1", "--n", "2", "--k", "1"]);
    assert_eq!(rows(&out)[1][3], "27");
}

#[test]
fn real_eig_grid_approaches_limit() {
    let out = ok(&["count", "--property", "real-eig", "--n", "2", "--k-grid", "10,100,1000"]);
    let r = rows(&out);
    assert_eq!(r.len(), 4);
    let gaps: Vec<f64> = r[1..]
        .iter()
        .map(|row| (row[5].parse::<f64>().unwrap() - 49.0 / 72.0).abs())
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(gaps[2] < 1e-3);
}

#[test]
fn count_n3_uses_enumeration() {
    let out = ok(&["count", "--property", "integer-eig", "--n", "3", "--k", "1"]);
    assert_eq!(rows(&out)[1][3], "14019");
    let out = ok(&["count", "--property", "singular", "--n", "3", "--k", "1"]);
    assert_eq!(rows(&out)[1][3], "7875");
}

#[test]
fn count_json_has_schema_and_manifest() {
    let out = ok(&["--format", "json", "count", "--property", "singular", "--k", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "intmat-lab/1");
    assert_eq!(v["manifest"]["subcommand"], "count");
    assert_eq!(v["manifest"]["params"]["k"], 3);
    assert_eq!(v["manifest"]["timestamp"], 0);
    assert_eq!(v["records"][0]["count"], "289");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&["count", "--property", "singular"]), 1);
    assert_eq!(code(&["count", "--property", "real-eig", "--n", "3", "--k", "1"]), 1);
    assert_eq!(code(&["count", "--property", "lambda-eig", "--k", "1"]), 1);
    assert_eq!(code(&["count", "--property", "nonsense", "--k", "1"]), 1);
    assert_eq!(code(&["estimate", "--property", "singular", "--k", "3"]), 1);
    assert_eq!(code(&["hist", "--mode", "integer", "--source", "exact", "--k", "5", "--n", "3"]), 1);
    assert_eq!(code(&["hist", "--mode", "real", "--source", "exact", "--k", "5"]), 1);
    assert_eq!(code(&["hist", "--mode", "real", "--source", "sampled", "--k", "5"]), 1);
    assert_eq!(code(&["curve", "--step", "0"]), 1);
    assert_eq!(code(&["curve", "--step", "0.3"]), 1);
    assert_eq!(code(&["verify", "identity", "--trials", "5"]), 1);
    assert_eq!(code(&["--workers", "0", "curve"]), 1);
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn budget_refusal_exits_3_and_names_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_intmat"))
        .args(["count", "--property", "integer-eig", "--n", "2", "--k", "1000"])
        .env("INTMAT_BUDGET_MB", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("memory budget"));
    assert_eq!(code(&["count", "--property", "singular", "--n", "5", "--k", "3"]), 3);
    let bad = Command::new(env!("CARGO_BIN_EXE_intmat"))
        .args(["count", "--property", "singular", "--k", "1"])
        .env("INTMAT_BUDGET_MB", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn estimate_is_reproducible() {
    let args = ["estimate", "--property", "singular", "--n", "2", "--k", "20", "--samples", "50000", "--seed", "9", "--workers", "3"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let json = ["--format", "json", "estimate", "--property", "integer-eig", "--n", "3", "--k", "4", "--samples", "2000", "--seed", "42"];
    assert_eq!(ok(&json), ok(&json));
    let r = rows(&a);
    assert_eq!(r[0][12], "generator");
    assert_eq!(r[1][4], "9");
    assert_eq!(r[1][5], "3");
    assert!(r[1][12].contains("ChaCha8"));
}

#[test]
fn always_has_unit_estimate() {
    let out = ok(&["estimate", "--property", "always", "--n", "3", "--k", "7", "--samples", "500", "--seed", "1"]);
    let r = rows(&out);
    assert_eq!(r[1][6], "500");
    assert_eq!(r[1][7].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn exact_histogram_area_and_symmetry() {
    let out = ok(&["hist", "--mode", "integer", "--source", "exact", "--k", "50", "--bins", "100"]);
    let r = rows(&out);
    assert_eq!(r[0], ["delta_lo", "delta_hi", "density"]);
    let meta = r.last().unwrap();
    assert_eq!(meta[0], "#meta");
    assert_eq!(meta[2], "area=2.000000");
    let density: Vec<&str> = r[1..r.len() - 1].iter().map(|row| row[2].as_str()).collect();
    assert_eq!(density.len(), 100);
    assert!(density.iter().eq(density.iter().rev()));
    assert_eq!(r[1][0], "-2");
    assert_eq!(r[100][1], "2");
}

#[test]
fn sampled_real_histogram_is_bimodal() {
    let out = ok(&["hist", "--mode", "real", "--source", "sampled", "--k", "1000", "--samples", "200000", "--seed", "7", "--bins", "40"]);
    let r = rows(&out);
    let density: Vec<f64> = r[1..r.len() - 1].iter().map(|row| row[2].parse().unwrap()).collect();
    let centre = (density[19] + density[20]) / 2.0;
    let left = density[..20].iter().cloned().fold(0.0, f64::max);
    let right = density[20..].iter().cloned().fold(0.0, f64::max);
    assert!(left > centre && right > centre);
    let peak = density[20..].iter().position(|&d| d == right).unwrap();
    let delta = -2.0 + 0.1 * (20 + peak) as f64;
    assert!((0.5..=1.0).contains(&delta), "peak bin at {delta}");
}

#[test]
fn curve_grid_and_values() {
    let out = ok(&["curve", "--step", "0.001"]);
    let r = rows(&out);
    assert_eq!(r.len(), 4002);
    assert_eq!(r[0], ["delta", "u_z", "u_r"]);
    assert_eq!(r[1], ["-2", "0", "0"]);
    assert_eq!(r[4001], ["2", "0", "0"]);
    let mid = &r[2001];
    assert_eq!(mid[0], "0");
    assert!((mid[1].parse::<f64>().unwrap() - 1.088034).abs() < 1e-6);
    assert!((mid[2].parse::<f64>().unwrap() - 40.0 / 49.0).abs() < 1e-9);
    assert_eq!(rows(&ok(&["curve"])).len(), 402);
}

#[test]
fn verify_suites_pass() {
    let out = ok(&["verify", "identity", "--n", "4", "--trials", "10000", "--seed", "1"]);
    assert!(out.starts_with("PASS identity"));
    assert!(ok(&["verify", "oracle", "--k-max", "15"]).starts_with("PASS oracle"));
    assert!(ok(&["verify", "curves"]).starts_with("PASS curves"));
    assert!(ok(&["verify", "gershgorin", "--n", "3", "--trials", "2000", "--seed", "2"]).starts_with("PASS gershgorin"));
    let v: Value = serde_json::from_str(&ok(&["--format", "json", "verify", "all", "--trials", "200", "--seed", "5", "--k-max", "6"])).unwrap();
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 4);
    assert!(suites.iter().all(|s| s["passed"] == true));
}

#[test]
fn report_documents() {
    assert_eq!(code(&["report", "--target", "singular", "--k-grid", "100"]), 1);
    assert_eq!(code(&["report", "--target", "singular", "--k-grid", "100,50"]), 1);
    let v: Value = serde_json::from_str(&ok(&["report", "--target", "singular", "--k-grid", "100,1000,10000"])).unwrap();
    assert_eq!(v["schema"], "intmat-lab/1");
    assert_eq!(v["manifest"]["subcommand"], "report");
    let rows = v["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(v["report"]["trend_holds"], true);
    let v: Value = serde_json::from_str(&ok(&["report", "--target", "integer-eig", "--k-grid", "50,150,450"])).unwrap();
    assert_eq!(v["report"]["trend_holds"], true);
    let v: Value = serde_json::from_str(&ok(&["report", "--target", "histogram", "--curve", "u_z", "--k-grid", "25,100", "--bins", "20"])).unwrap();
    assert!(v["report"]["rows"][1]["l1_distance"].as_f64().is_some());
    assert_eq!(code(&["report", "--target", "histogram", "--curve", "u_r", "--k-grid", "25,100"]), 1);
}
