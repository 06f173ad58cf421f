//! End-to-end runs of the `gradmat` binary: golden outputs, exit codes,
//! byte stability and the verify round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gradmat::format::{grading_from_json, grading_to_json};
use gradmat_core::field::Field;
use gradmat_core::matrix::{in_span, Matrix};
use serde_json::Value;

fn gradmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = gradmat(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// (golden file, arguments)
const GOLDEN: &[(&str, &[&str])] = &[
    ("count_2_2.json", &["count", "--n", "2", "--m", "2", "--oracle"]),
    ("count_12_7.json", &["count", "--n", "12", "--m", "7", "--oracle"]),
    ("enumerate_4_3.json", &["enumerate", "--n", "4", "--m", "3"]),
    ("iso_not.json", &["iso", "--group", "C2", "--t1", "e,e", "--t2", "e,s"]),
    (
        "iso_c2c2.json",
        &[
            "iso",
            "--group",
            "C2xC2",
            "--t1",
            "e,(1,0),(0,1)",
            "--t2",
            "(1,1),(0,1),(1,0)",
        ],
    ),
    (
        "build_good_c3.json",
        &["build-good", "--group", "C3", "--degrees", "0,1,1", "--field", "GF(3)"],
    ),
    (
        "descend_q_2.json",
        &["descend", "--field", "Q", "--quadratic-alpha", "2"],
    ),
    (
        "descend_gf2_1.json",
        &["descend", "--field", "GF(2)", "--quadratic-alpha", "1"],
    ),
    ("classify_gf3.json", &["classify-forms", "--field", "GF(3)"]),
];

#[test]
fn golden_outputs() {
    for (file, args) in GOLDEN {
        let out = gradmat(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let expected = std::fs::read(golden(file)).unwrap();
        assert_eq!(
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&expected),
            "{file}"
        );
    }
}

#[test]
fn output_is_byte_stable() {
    for (_, args) in GOLDEN {
        let a = gradmat(args).stdout;
        let b = gradmat(args).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn count_small_cases() {
    let v = stdout_json(&["count", "--n", "2", "--m", "2", "--oracle"]);
    assert_eq!((v["count"].as_u64(), v["oracle"].as_u64()), (Some(2), Some(2)));
    let v = stdout_json(&["count", "--n", "4", "--m", "2"]);
    assert_eq!(v["count"].as_u64(), Some(3));
    assert!(v.get("oracle").is_none());
    // beyond u64: C(239, 39)/40 and friends stay exact
    let v = stdout_json(&["count", "--n", "40", "--m", "200"]);
    let digits = v["count"].to_string();
    assert!(
        digits.len() > 20 && digits.bytes().all(|b| b.is_ascii_digit()),
        "{digits}"
    );
}

#[test]
fn enumerate_lists_minimal_rotations() {
    let v = stdout_json(&["enumerate", "--n", "3", "--m", "3"]);
    let reps: Vec<Vec<u64>> = serde_json::from_value(v["representatives"].clone()).unwrap();
    assert_eq!(reps, vec![vec![0, 0, 3], vec![0, 1, 2], vec![0, 2, 1], vec![1, 1, 1]]);
}

#[test]
fn iso_witness_and_refusal() {
    let v = stdout_json(&["iso", "--group", "C4", "--t1", "0,1,1", "--t2", "2,1,2"]);
    assert_eq!(v["result"], "isomorphic");
    assert_eq!(v["translation"], serde_json::json!([1]));
    let v = stdout_json(&["iso", "--group", "C4", "--t1", "0,1,1", "--t2", "0,0,1"]);
    assert_eq!(v["result"], "not-isomorphic");
}

#[test]
fn descend_q_matches_display() {
    let q = Field::Rational;
    let v = stdout_json(&["descend", "--field", "Q", "--quadratic-alpha", "2"]);
    let a = grading_from_json(&v["grading"]).unwrap();
    let g = a.group();
    let expect_e = [Matrix::identity(&q, 2), Matrix::from_i64(&q, &[&[0, 1], &[2, 0]])];
    let expect_s = [
        Matrix::from_i64(&q, &[&[1, 0], &[0, -1]]),
        Matrix::from_i64(&q, &[&[0, 1], &[-2, 0]]),
    ];
    for (got, want) in [
        (a.component(&g.identity()), &expect_e),
        (a.component(&g.generator(0)), &expect_s),
    ] {
        assert_eq!(got.len(), 2);
        assert!(got.iter().all(|x| in_span(&q, want, x)));
        assert!(want.iter().all(|x| in_span(&q, got, x)));
    }
    assert_eq!(v["witness"]["validated"], true);
    assert_eq!(v["invariant"]["split"], false);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| gradmat(args).status.code();
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&["count"]), Some(1));
    assert_eq!(code(&["count", "--n", "x", "--m", "2"]), Some(1));
    assert_eq!(code(&["build-good", "--group", "C2", "--degrees", "(0,1)"]), Some(2));
    assert_eq!(code(&["verify", "--grading", "/nonexistent/grading.json"]), Some(2));
    assert_eq!(
        code(&["descend", "--field", "GF(9)", "--quadratic-alpha", "1 in GF(3)"]),
        Some(2)
    );
}

#[test]
fn invalid_input_reports_on_stderr_only() {
    let out = gradmat(&["classify-forms", "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: invalid input"));
}

fn write_temp(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path
}

#[test]
fn every_emitted_grading_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let mut emitted = Vec::new();
    for args in [
        &[
            "build-good",
            "--group",
            "C2xC2",
            "--degrees",
            "e,(1,0),(0,1),(1,1)",
            "--field",
            "GF(5)",
        ][..],
        &["build-good", "--group", "C4", "--degrees", "0,1,1,3", "--field", "Q"],
        &["descend", "--field", "Q", "--quadratic-alpha", "-1"],
        &["descend", "--field", "GF(4)", "--quadratic-alpha", "2 in GF(4)"],
        &["descend", "--frobenius", "3", "2"],
        &["descend", "--frobenius", "2", "3"],
        &["descend", "--field", "GF(3)", "--split", "C2xC2"],
    ] {
        emitted.push(stdout_json(args));
    }
    for field in ["GF(2)", "GF(5)", "GF(9)"] {
        let v = stdout_json(&["classify-forms", "--field", field]);
        for form in v["forms"].as_array().unwrap() {
            emitted.push(form["grading"].clone());
        }
    }
    for (i, v) in emitted.iter().enumerate() {
        let path = write_temp(dir.path(), &format!("g{i}.json"), v);
        let report = stdout_json(&["verify", "--grading", path.to_str().unwrap()]);
        assert_eq!(report["result"], "pass", "grading {i}");
    }
}

#[test]
fn verify_names_the_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let v = stdout_json(&["build-good", "--group", "C2", "--degrees", "0,1", "--field", "GF(3)"]);
    let mut a = v.clone();
    // move e_12 into the neutral component
    let moved = a["components"]["1"].as_array_mut().unwrap().remove(0);
    a["components"]["0"].as_array_mut().unwrap().push(moved);
    let path = write_temp(dir.path(), "bad.json", &a);
    let out = gradmat(&["verify", "--grading", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"], "fail");
    assert_eq!(report["axiom"], "product");
}

#[test]
fn split_check_against_file() {
    let dir = tempfile::tempdir().unwrap();
    let descended = stdout_json(&["descend", "--field", "GF(5)", "--quadratic-alpha", "2"]);
    let path = write_temp(dir.path(), "d.json", &descended);
    let args = [
        "split-check",
        "--field",
        "GF(5)",
        "--quadratic-alpha",
        "2",
        "--grading",
        path.to_str().unwrap(),
    ];
    let v = stdout_json(&args);
    assert_eq!(v["grading_matches"], true);
    assert_eq!(v["routes"]["j"]["invariant"], v["routes"]["datum"]["invariant"]);

    // the good grading is not this form
    let good = stdout_json(&["build-good", "--group", "C2", "--degrees", "0,1", "--field", "GF(5)"]);
    let path = write_temp(dir.path(), "good.json", &good);
    let out = gradmat(&[
        "split-check",
        "--field",
        "GF(5)",
        "--quadratic-alpha",
        "2",
        "--grading",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extension_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let v = stdout_json(&["descend", "--frobenius", "2", "2"]);
    let path = write_temp(dir.path(), "ext.json", &v["extension"]);
    let again = stdout_json(&["descend", "--extension", path.to_str().unwrap()]);
    assert_eq!(again["grading"], v["grading"]);

    // σ(x) = -x on GF(3)[X]/(X²) is not Galois
    let mut bad = stdout_json(&["descend", "--field", "GF(3)", "--quadratic-alpha", "1"])["extension"].clone();
    bad["mul_table"][1][1] = serde_json::json!(["0 mod 3", "0 mod 3"]);
    let path = write_temp(dir.path(), "bad.json", &bad);
    assert_eq!(
        gradmat(&["descend", "--extension", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn grading_json_is_stable_under_reparse() {
    let v = stdout_json(&["descend", "--field", "GF(7)", "--quadratic-alpha", "3"]);
    let a = grading_from_json(&v["grading"]).unwrap();
    assert_eq!(grading_to_json(&a), v["grading"]);
}
