//! End-to-end checks of the `moddiv` binary: schemas, exit codes,
//! determinism, and certificate round-trips.

use serde_json::{json, Value};
use std::process::{Command, Output};

fn moddiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moddiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn snf_emits_envelope_with_digest() {
    let out = moddiv(&[
        "snf",
        "-i",
        r#"{"ring":"Z","rows":2,"cols":2,"entries":[[2,0],[0,3]]}"#,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["verb"], "snf");
    assert!(v["inputDigest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["result"]["d"]["entries"], json!([[1, 0], [0, 6]]));
}

#[test]
fn hnf_gcd_row() {
    let out = moddiv(&[
        "hnf",
        "-i",
        r#"{"ring":"Z","rows":1,"cols":2,"entries":[[6,4]]}"#,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["d"]["entries"], json!([[2, 0]]));
}

#[test]
fn solve_reports_kernel_over_z6() {
    let out = moddiv(&[
        "solve",
        "-i",
        r#"{"a":{"ring":"Z/6","rows":1,"cols":1,"entries":[[2]]},"b":{"ring":"Z/6","rows":1,"cols":1,"entries":[[4]]}}"#,
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["solvable"], true);
    assert_eq!(v["result"]["particular"]["entries"], json!([[2]]));
    assert_eq!(v["result"]["kernel"]["entries"], json!([[3]]));
}

#[test]
fn divide_counterexample_exits_zero() {
    let gallery = stdout_json(&moddiv(&["gallery", "step2-minimal"]));
    let scenario = &gallery["result"];
    let input = json!({ "hom": scenario["homs"][0], "r": scenario["r"] });
    let out = moddiv(&["divide", "-i", &input.to_string()]);
    assert!(
        out.status.success(),
        "counterexamples are answers, not errors"
    );
    let v = stdout_json(&out);
    assert_eq!(v["result"]["verdict"], "notDivisible");
    assert_eq!(v["result"]["seeminglyDivisible"], true);
    assert_eq!(v["result"]["counterexample"], true);
    assert_eq!(v["result"]["checkable"], true);

    // Oracle agrees and exhausts exactly the 4 homs.
    let out = moddiv(&["oracle", "-i", &input.to_string()]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["reason"]["oracle-exhausted"], 4);

    // The embedded f re-validates through check-hom.
    let f = v["result"]["f"].to_string();
    let out = moddiv(&["check-hom", "-i", &f]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["wellDefined"], true);
}

#[test]
fn divide_divisible_certificate_reverifies() {
    let input = json!({
        "hom": {
            "source": {"ring": "Z", "gens": 1, "relations": {"ring": "Z", "rows": 1, "cols": 0, "entries": [[]]}},
            "target": {"ring": "Z", "gens": 1, "relations": {"ring": "Z", "rows": 1, "cols": 0, "entries": [[]]}},
            "matrix": {"ring": "Z", "rows": 1, "cols": 1, "entries": [[6]]}
        },
        "r": 3
    });
    let v = stdout_json(&moddiv(&["divide", "-i", &input.to_string()]));
    assert_eq!(v["result"]["verdict"], "divisible");
    assert_eq!(v["result"]["g"]["matrix"]["entries"], json!([[2]]));
}

#[test]
fn malformed_input_exits_2() {
    let out = moddiv(&["snf", "-i", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = moddiv(&[
        "snf",
        "-i",
        r#"{"ring":"Q","rows":0,"cols":0,"entries":[]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = moddiv(&["classify-ring", "-r", "Z/65536"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_override_env_raises_limit() {
    let out = Command::new(env!("CARGO_BIN_EXE_moddiv"))
        .args(["classify-ring", "-r", "Z/5000"])
        .env("MODDIV_BUDGET_OVERRIDE", "6000")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn probe_output_is_byte_identical() {
    let a = moddiv(&["probe", "-r", "Z/9", "--trials", "25", "--seed", "11"]);
    let b = moddiv(&["probe", "-r", "Z/9", "--trials", "25", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["result"]["counterexample"], Value::Null);
}

#[test]
fn probe_finds_counterexample_on_bad_ring() {
    let out = moddiv(&[
        "probe",
        "-r",
        "GF(2)[x,y]/(x^2,xy,y^2)",
        "--trials",
        "5",
        "--seed",
        "1",
    ]);
    let v = stdout_json(&out);
    let rec = &v["result"]["counterexample"];
    assert!(rec.is_object());
    assert!(rec["phase"]["deterministic"].is_object());
    assert_eq!(rec["certificate"]["verdict"], "notDivisible");
    assert_eq!(rec["seeming"]["verdict"], true);
}

#[test]
fn step2_verb_builds_the_counterexample() {
    let input = json!({
        "ring": "GF(2)[x,y]/(x^2,xy,y^2)",
        "t": [0, 1, 0],
        "y": [0, 0, 1],
    });
    let v = stdout_json(&moddiv(&["step2", "-i", &input.to_string()]));
    assert_eq!(v["result"]["seeming"]["verdict"], true);
    assert_eq!(v["result"]["certificate"]["verdict"], "notDivisible");

    // Hypothesis violations are input errors.
    let bad = json!({ "ring": "Z/4", "t": 2, "y": 2 });
    let out = moddiv(&["step2", "-i", &bad.to_string()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gallery_names_and_unknown() {
    for name in [
        "prop-thomas-basic",
        "step2-minimal",
        "vnr-product",
        "principal-chain",
        "product-split",
    ] {
        let v = stdout_json(&moddiv(&["gallery", name]));
        assert_eq!(v["result"]["name"], name);
    }
    let out = moddiv(&["gallery", "no-such-scenario"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_and_invariants() {
    let module = json!({
        "ring": "Z/8", "gens": 2,
        "relations": {"ring": "Z/8", "rows": 2, "cols": 2, "entries": [[2, 0], [0, 0]]}
    });
    let input = json!({ "module": module, "p": 2, "n": 3 });
    let v = stdout_json(&moddiv(&["decompose", "-i", &input.to_string()]));
    assert_eq!(v["result"]["factors"][0]["exponent"], 1);
    assert_eq!(v["result"]["freeRank"], 1);

    let z_module = json!({
        "ring": "Z", "gens": 2,
        "relations": {"ring": "Z", "rows": 2, "cols": 2, "entries": [[2, 0], [0, 3]]}
    });
    let v = stdout_json(&moddiv(&["invariants", "-i", &z_module.to_string()]));
    assert_eq!(v["result"]["factors"], json!([6]));
    assert_eq!(v["result"]["freeRank"], 0);
}

#[test]
fn homology_and_obstruction_verbs() {
    let input = json!({
        "hom": {
            "source": {"ring": "Z", "gens": 1, "relations": {"ring": "Z", "rows": 1, "cols": 0, "entries": [[]]}},
            "target": {"ring": "Z", "gens": 1, "relations": {"ring": "Z", "rows": 1, "cols": 0, "entries": [[]]}},
            "matrix": {"ring": "Z", "rows": 1, "cols": 1, "entries": [[4]]}
        },
        "r": 4
    });
    let v = stdout_json(&moddiv(&["homology", "-i", &input.to_string()]));
    assert_eq!(v["result"]["h0Zero"], true);
    assert_eq!(v["result"]["h1Zero"], true);
    assert_eq!(v["result"]["coneApplicable"], true);

    let v = stdout_json(&moddiv(&["obstruction", "-i", &input.to_string()]));
    assert_eq!(v["result"]["extClass"], "zero");
    assert!(v["result"]["nullHomotopic"]["yes"].is_object());
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = moddiv(&[
        "snf",
        "-i",
        r#"{"ring":"Z","rows":1,"cols":1,"entries":[[5]]}"#,
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["d"]["entries"], json!([[5]]));
}
