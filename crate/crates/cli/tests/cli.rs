use std::process::{Command, Output};

use serde_json::Value;

fn verma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verma")).args(args).env_remove("VERMA_GRADE_CAP").output().expect("run verma")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn orbit_rows() {
    let out = verma(&["orbit", "--p", "2", "--q", "3", "--depth", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "verma-report/1");
    let roots: Vec<(i64, i64)> = v["rows"].as_array().unwrap().iter().map(|r| (r["root"]["k1"].as_i64().unwrap(), r["root"]["k2"].as_i64().unwrap())).collect();
    assert_eq!(roots, vec![(1, 0), (1, 3), (5, 3), (5, 12)]);
    let v = json(&verma(&["orbit", "--p", "2", "--q", "3", "--depth", "1", "--seed", "both"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_cartan_is_a_config_error() {
    let out = verma(&["orbit", "--p", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pq >= 4"));
}

#[test]
fn gamma_table() {
    let v = json(&verma(&["gamma", "--p", "2", "--q", "2", "--kmax", "6"]));
    assert_eq!(v["rows"][3]["gamma1"], "3");
    assert_eq!(v["rows"][3]["gamma2"], "2");
}

#[test]
fn exponents_and_kk() {
    let v = json(&verma(&["exponents", "--case", "2", "--n", "1", "--m", "1", "--t", "1/3", "--p", "2", "--q", "2"]));
    assert_eq!(v["word_text"], "f2^{11/6} f1^{1} f2^{1/6}");
    let v = json(&verma(&["kk", "--p", "2", "--q", "2", "--root", "1,0", "--m", "2", "--x", "2", "--y", "5"]));
    assert_eq!(v["holds"], true);
}

#[test]
fn singular_at_case_weight() {
    let v = json(&verma(&["singular", "--p", "2", "--q", "2", "--case", "4", "--n", "1", "--m", "1", "--t", "1/3"]));
    assert_eq!(v["kernel_dim"], 1);
    assert_eq!(v["vectors"][0][0]["coef"], "1");
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--p", "2", "--q", "2", "--cases", "1,2,4", "--m", "1,2", "--skip-identities"];
    let a = verma(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = verma(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["summary"]["passed"], 6);
    assert_eq!(v["config"]["targets"], serde_json::json!(["H", "L"]));
}

#[test]
fn sl2_target_needs_p_q_at_least_two() {
    let out = verma(&["verify", "--targets", "L", "--p", "1", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_skips_are_reported() {
    let out = verma(&["verify", "--grade-cap", "4", "--cases", "3", "--n", "2", "--p", "2", "--q", "2", "--skip-identities"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cases"][0]["outcome"], "skipped");
    assert_eq!(v["cases"][0]["reason"], "grade_cap_exceeded");
    assert_eq!(v["summary"]["skipped"], 1);
}

#[test]
fn env_overrides_hard_cap() {
    let base = ["verify", "--p", "2", "--q", "2", "--cases", "1", "--grade-cap", "20", "--skip-identities"];
    assert_eq!(verma(&base).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_verma")).args(base).env("VERMA_GRADE_CAP", "20").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.csv");
    let out = verma(&["gamma", "--p", "2", "--q", "3", "--kmax", "2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "k,gamma1,gamma2\n0,0,0\n1,1,0\n2,3,1\n");
}

#[test]
fn identities_suite() {
    let out = verma(&["identities", "--max-exp", "3", "--max-n", "3", "--samples", "4", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
