use std::process::Command;

use aybe_core::cli::run_with_io;
use serde_json::Value;

fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("aybe").chain(args.iter().copied());
    let code = run_with_io(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const STRUCTURE: &str = r#"{"n":3,"c0":[2,3,1],"c":[3,1,2],"gamma1":[[2,3]]}"#;
const MATRIX: &str = r#"{"N":3,"n":4,"k":1,"m":[[0,0,0,1],[0,0,1,0],[0,0,0,0]]}"#;

#[test]
fn enumerate_lists_structures() {
    let (code, out, _) = call(&["enumerate", "--n", "3"], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
}

#[test]
fn eval_from_stdin() {
    let (code, out, err) = call(&["eval", "--stdin", "--kind", "trig", "--u", "0.5,0.1", "--v", "0.3"], STRUCTURE);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 3);
    assert!(!v["coeffs"].as_array().unwrap().is_empty());
}

#[test]
fn eval_at_pole_is_an_error() {
    let (code, _, err) = call(&["eval", "--stdin", "--u", "0", "--v", "0.3"], STRUCTURE);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn eval_all_kinds() {
    for kind in ["trig", "quantum", "classical", "multiplicative"] {
        let (code, _, err) = call(&["eval", "--stdin", "--kind", kind], STRUCTURE);
        assert_eq!(code, 0, "{kind}: {err}");
    }
}

#[test]
fn verify_structure_all_suites_text() {
    let (code, out, _) = call(&["verify", "--stdin", "--samples", "6", "--format", "text"], STRUCTURE);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().all(|l| l.contains("PASS")));
}

#[test]
fn verify_perturbed_fails_with_exit_one() {
    let (code, out, _) = call(&["verify", "--stdin", "--suite", "aybe", "--samples", "6", "--perturb"], STRUCTURE);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["suite"], "aybe");
}

#[test]
fn verify_rational_family() {
    let (code, _, _) = call(&["verify", "--family", "rational", "--n", "3", "--samples", "6"], "");
    assert_eq!(code, 0);
    let (code, _, _) = call(&["verify", "--family", "rational", "--suite", "cubic"], "");
    assert_eq!(code, 2);
}

#[test]
fn verify_matrix_from_stdin() {
    let (code, out, _) = call(&["verify", "--stdin", "--suite", "aybe2", "--samples", "6"], MATRIX);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = call(&["verify", "--stdin", "--suite", "cubic"], MATRIX);
    assert_eq!(code, 2);
    assert!(err.contains("aybe2"));
}

#[test]
fn bundle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, MATRIX).unwrap();
    let p = path.to_str().unwrap();

    let (code, out, _) = call(&["bundle-check", "--matrix", p, "--x", "1;0.5;-0.5,0.8660254037844386"], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simple"], true);
    let dims: Vec<u64> = v["hom_dim"].as_array().unwrap().iter().map(|d| d["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1]);

    let (code, out, _) = call(&["bundle-bd", "--matrix", p], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 3);

    let (code, out, _) = call(&["oracle-compare", "--matrix", p, "--trials", "4"], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);

    let (code, _, _) = call(&["verify", "--suite", "aybe2", "--matrix", p, "--samples", "6"], "");
    assert_eq!(code, 0);
}

#[test]
fn bundle_check_flags_non_simple() {
    let (code, out, _) = call(&["bundle-check", "--stdin"], r#"{"N":2,"n":2,"m":[[0,0],[0,0]]}"#);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simple"], false);
    assert!(v["witness"].as_str().unwrap().contains("identically zero"));
}

#[test]
fn malformed_input_is_usage_error() {
    assert_eq!(call(&["bundle-check", "--stdin"], "{not json").0, 2);
    assert_eq!(call(&["bundle-check", "--stdin"], r#"{"N":2,"n":2,"m":[[0,0],[0,0]],"extra":1}"#).0, 2);
    assert_eq!(call(&["eval"], "").0, 2);
    assert_eq!(call(&["verify", "--suite", "nope"], "").0, 2);
}

#[test]
fn report_summarizes_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let (_, out, _) = call(&["verify", "--stdin", "--suite", "unitarity", "--samples", "4"], STRUCTURE);
    std::fs::write(&good, &out).unwrap();
    let (_, out, _) = call(&["verify", "--stdin", "--suite", "unitarity", "--samples", "4", "--perturb"], STRUCTURE);
    std::fs::write(&bad, &out).unwrap();
    let (code, out, _) = call(&["report", good.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert!(out.contains("\"pass\": true"));
    let (code, out, _) = call(&["report", good.to_str().unwrap(), bad.to_str().unwrap()], "");
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failed"], serde_json::json!(["unitarity"]));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("list.json");
    let (code, out, _) = call(&["enumerate", "--n", "2", "--out", path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn same_seed_same_report() {
    let args = ["verify", "--stdin", "--suite", "cubic", "--samples", "5", "--seed", "42"];
    let a = call(&args, STRUCTURE).1;
    let b = call(&args, STRUCTURE).1;
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_aybe");
    let ok = Command::new(bin).args(["enumerate", "--n", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["enumerate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify"));
}
