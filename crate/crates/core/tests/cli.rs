use std::process::{Command, Output};

use multider::coxeter::lookup;
use multider::multider::Pipeline;
use multider::serial::{poly_matrix_from_record, PolyRecord, SystemRecord};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multider"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const B2_P3: &str = "\
system B2 (h=4, exponents 1,3)
f1 = 1/2*x1^2 + 1/2*x2^2
f2 = 1/4*x1^4 + 1/4*x2^4
Q = x1^3*x2 - x1*x2^3
m = 3, k = 1, column degrees 5,7
det P_3 = 1/3 * Q^3
xi_1^(3) = (-1/3*x1^5 + 5/3*x1^3*x2^2) ∂1 + (5/3*x1^2*x2^3 - 1/3*x2^5) ∂2
xi_2^(3) = (-1/3*x1^7 + x1^5*x2^2 + 2/3*x1^3*x2^4) ∂1 + (2/3*x1^4*x2^3 + x1^2*x2^5 - 1/3*x2^7) ∂2
";

#[test]
fn golden_basis_text() {
    let o = run(&["basis", "B2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), B2_P3);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["verify", "B3", "--m", "3", "--format", "json"][..],
        &["basis", "I2(5)", "--m", "4", "--format", "json"][..],
        &["bmatrix", "D4", "--k", "2"][..],
        &["catalog"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["verify", "A3", "--m", "2"]), Some(0));
    assert_eq!(code(&["selftest"]), Some(0));
    assert_eq!(code(&["selftest", "--inject-fault", "negate-first-partial"]), Some(1));
    assert_eq!(code(&["verify", "B2", "--m", "3", "--inject-fault", "negate-first-partial"]), Some(1));
    assert_eq!(code(&["basis", "E7", "--m", "1"]), Some(2));
    assert_eq!(code(&["basis", "B2"]), Some(2));
    assert_eq!(code(&["verify", "B2", "--m", "1", "--checks", "bogus"]), Some(2));
    assert_eq!(code(&["bmatrix", "B2", "--k", "0"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["basis", "B2", "--m", "12"]), Some(3));
    assert_eq!(code(&["basis", "B6", "--m", "1"]), Some(3));
    assert_eq!(code(&["bmatrix", "B2", "--k", "5"]), Some(3));
}

#[test]
fn failing_check_never_exits_zero() {
    let o = run(&["verify", "B3", "--m", "2", "--inject-fault", "negate-first-partial"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn basis_json_round_trips() {
    for (key, m) in [("B3", 3), ("I2(5)", 2), ("A2", 5)] {
        let v = json(&["basis", key, "--m", &m.to_string(), "--format", "json"]);
        assert_eq!(v["system"], key);
        let l = lookup(key).unwrap().rank();
        let rec: Vec<Vec<PolyRecord>> = serde_json::from_value(v["result"]["matrix"].clone()).unwrap();
        let p = poly_matrix_from_record(&rec, l).unwrap();
        let want = Pipeline::new(lookup(key).unwrap()).p_matrix(m).unwrap().p;
        assert_eq!(p, want, "{key} m={m}");
    }
}

#[test]
fn catalog_json_is_system_records() {
    let v = json(&["catalog", "--format", "json"]);
    let recs: Vec<SystemRecord> = serde_json::from_value(v["result"].clone()).unwrap();
    let b3 = recs.iter().find(|r| r.key == "B3").unwrap();
    assert_eq!(b3.h, 6);
    assert_eq!(b3.exponents, vec![1, 3, 5]);
    assert_eq!(b3.hyperplane_count, 9);
}

#[test]
fn verify_json_report() {
    let v = json(&["verify", "I2(5)", "--m", "3", "--format", "json"]);
    assert_eq!(v["result"]["all_pass"], true);
    let flags: Vec<&str> = v["result"]["flags"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(flags.contains(&"orbit-level membership"));
    let checks = v["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().all(|c| c.get("elapsed_ms").is_none()));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let args = ["bmatrix", "B3", "--k", "1", "--format", "json"];
    let direct = run(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = run(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct);
}
