//! End-to-end tests of the `siegel` binary: exit codes, report shapes, and
//! byte-determinism of the JSON output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_siegel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn jb_file(dir: &Path) -> String {
    write(
        dir,
        "JB.json",
        &json!({"n": 3, "B": [[["0","0"],["1","0"]],[["-1","0"],["0","0"]]]}),
    )
}

fn dilation_map_file(dir: &Path) -> String {
    // F = (2 z', 4 z_n)
    write(
        dir,
        "F.json",
        &json!({"n": 3, "truncation_order": null, "components": [
            [{"alpha": [1,0,0], "beta": [0,0,0], "re": "2", "im": "0"}],
            [{"alpha": [0,1,0], "beta": [0,0,0], "re": "2", "im": "0"}],
            [{"alpha": [0,0,1], "beta": [0,0,0], "re": "4", "im": "0"}]
        ]}),
    )
}

#[test]
fn reconstruct_dilation_example() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    let f = dilation_map_file(dir.path());
    let out = run(&[
        "reconstruct",
        "--structure",
        &jb,
        "--map",
        &f,
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["automorphism"]["c"], "4");
    assert_eq!(report["automorphism"]["A"][0][0], json!(["2", "0"]));
    assert_eq!(report["automorphism"]["A"][0][1], json!(["0", "0"]));
    assert_eq!(report["trace"]["pass"], json!(true));
    assert_eq!(report["factored_view"]["tau"], "1/4");
    assert_eq!(report["trace"]["steps"].as_array().unwrap().len(), 7);
}

#[test]
fn reconstruct_rejects_planted_violation_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    // F_n picks up a stray conjugate term
    let f = write(
        dir.path(),
        "bad.json",
        &json!({"n": 3, "components": [
            [{"alpha": [1,0,0], "beta": [0,0,0], "re": "1", "im": "0"}],
            [{"alpha": [0,1,0], "beta": [0,0,0], "re": "1", "im": "0"}],
            [{"alpha": [0,0,1], "beta": [0,0,0], "re": "2", "im": "0"},
             {"alpha": [0,0,0], "beta": [1,0,0], "re": "1", "im": "0"}]
        ]}),
    );
    let out = run(&[
        "reconstruct",
        "--structure",
        &jb,
        "--map",
        &f,
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let steps = report["trace"]["steps"].as_array().unwrap();
    let failed: Vec<_> = steps
        .iter()
        .filter(|s| s["status"] == "failed")
        .map(|s| s["step"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed, vec!["antiholomorphic-linear-vanishes"]);
}

#[test]
fn structure_verify_paths() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    assert!(run(&["structure-verify", "--structure", &jb])
        .status
        .success());

    // malformed JSON: parse error, exit 2
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{ not json").unwrap();
    let out = run(&["structure-verify", "--structure", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // non-antisymmetric B: validation error, exit 3
    let bad = write(
        dir.path(),
        "bad_b.json",
        &json!({"n": 3, "B": [[["1","0"],["0","0"]],[["0","0"],["0","0"]]]}),
    );
    let out = run(&["structure-verify", "--structure", &bad]);
    assert_eq!(out.status.code(), Some(3));

    // tampered complexified matrix: check failure, exit 1, located entry
    let zero_terms = json!([]);
    let i_term = json!([{"alpha": [0,0,0], "beta": [0,0,0], "re": "0", "im": "1"}]);
    let minus_i_term = json!([{"alpha": [0,0,0], "beta": [0,0,0], "re": "0", "im": "-1"}]);
    let one_term = json!([{"alpha": [0,0,0], "beta": [0,0,0], "re": "1", "im": "0"}]);
    let mut matrix = Vec::new();
    for r in 0..6 {
        let mut row = Vec::new();
        for c in 0..6 {
            if r == c {
                row.push(if r % 2 == 0 {
                    i_term.clone()
                } else {
                    minus_i_term.clone()
                });
            } else {
                row.push(zero_terms.clone());
            }
        }
        matrix.push(Value::Array(row));
    }
    // plant a nonzero entry in the first row
    matrix[0][2] = one_term;
    let tampered = write(
        dir.path(),
        "tampered.json",
        &json!({"n": 3, "matrix": matrix}),
    );
    let out = run(&[
        "structure-verify",
        "--structure",
        &tampered,
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let failures = report["failures"].as_array().unwrap();
    assert!(failures
        .iter()
        .any(|f| f["row"] == 0 && f["col"] == 2 && f["check"] == "shape"));
}

#[test]
fn levi_at_origin_for_standard_structure() {
    let dir = tempfile::tempdir().unwrap();
    let std3 = write(
        dir.path(),
        "std.json",
        &json!({"n": 3, "B": [[["0","0"],["0","0"]],[["0","0"],["0","0"]]]}),
    );
    let out = run(&[
        "levi",
        "--structure",
        &std3,
        "--at",
        "origin",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["positive"], json!(true));
    assert_eq!(report["matrix"][0][0], json!(["4", "0"]));
    assert_eq!(report["matrix"][0][1], json!(["0", "0"]));
    assert_eq!(report["matrix"][1][1], json!(["4", "0"]));

    // off-boundary point: validation error
    let p = write(
        dir.path(),
        "p.json",
        &json!([["0", "0"], ["0", "0"], ["1", "0"]]),
    );
    let out = run(&["levi", "--structure", &std3, "--at", &p]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn map_check_all_with_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    let f = dilation_map_file(dir.path());
    let out = run(&[
        "map-check",
        "--structure",
        &jb,
        "--map",
        &f,
        "--sample",
        "50",
        "--seed",
        "11",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["pass"], json!(true));
    for entry in report["sampling"].as_array().unwrap() {
        assert_eq!(entry["result"]["agrees"], json!(true));
        assert!(entry["result"]["max_magnitude"].as_f64().unwrap() < 1e-9);
    }
    // a boundary-breaking map fails with exit 1
    let g = write(
        dir.path(),
        "shift.json",
        &json!({"n": 3, "components": [
            [{"alpha": [1,0,0], "beta": [0,0,0], "re": "1", "im": "0"}],
            [{"alpha": [0,1,0], "beta": [0,0,0], "re": "1", "im": "0"}],
            [{"alpha": [0,0,1], "beta": [0,0,0], "re": "1", "im": "0"},
             {"alpha": [0,0,0], "beta": [0,0,0], "re": "1", "im": "0"}]
        ]}),
    );
    let out = run(&[
        "map-check",
        "--structure",
        &jb,
        "--map",
        &g,
        "--check",
        "boundary",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn automorphism_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    let f = dilation_map_file(dir.path());
    // reconstruct, then feed the emitted automorphism back to aut-verify
    let out = run(&[
        "reconstruct",
        "--structure",
        &jb,
        "--map",
        &f,
        "--format",
        "json",
    ]);
    let report = stdout_json(&out);
    let g = write(dir.path(), "g.json", &report["automorphism"]);
    let out = run(&[
        "aut-verify",
        "--aut",
        &g,
        "--structure",
        &jb,
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let verdict = stdout_json(&out);
    assert_eq!(verdict["valid"], json!(true));
    assert_eq!(verdict["fixes_minus_one"], json!(false));

    // compose with itself and apply to a boundary point
    let out = run(&["aut-compose", "--aut", &g, "--aut", &g, "--format", "json"]);
    assert!(out.status.success());
    let composed = stdout_json(&out);
    assert_eq!(composed["automorphism"]["c"], "16");

    let p = write(
        dir.path(),
        "pt.json",
        &json!([["1", "0"], ["0", "0"], ["-1", "2"]]),
    );
    let out = run(&["aut-apply", "--aut", &g, "--at", &p, "--format", "json"]);
    assert!(out.status.success());
    let applied = stdout_json(&out);
    // rho scales by c, and the input lies on the boundary, so the output does
    assert_eq!(applied["rho_output"], json!(["0", "0"]));

    // an invalid automorphism file fails verification with exit 1
    let mut bad = report["automorphism"].clone();
    bad["c"] = json!("5");
    let bad = write(dir.path(), "bad_aut.json", &bad);
    let out = run(&["aut-verify", "--aut", &bad, "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let verdict = stdout_json(&out);
    assert_eq!(verdict["valid"], json!(false));
}

#[test]
fn extend_pipeline_emits_the_full_trace() {
    use siegel_core::autgroup::Automorphism;
    use siegel_core::structures::SimpleModelStructure;
    use siegel_core::{CMatrix, ComplexRational};

    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    // a dilation moved by the boundary translation zeta = (1, i, -2+5i)
    let mut b = CMatrix::zero(2, 2);
    b[(0, 1)] = ComplexRational::one();
    b[(1, 0)] = ComplexRational::from_int(-1);
    let s = SimpleModelStructure::new(3, b).unwrap();
    let zeta = vec![
        ComplexRational::from_int(1),
        ComplexRational::i(),
        ComplexRational::gaussian(-2, 5, 1),
    ];
    let lin = Automorphism::try_new(
        s.clone(),
        CMatrix::scalar(2, &ComplexRational::from_int(2)),
        siegel_core::Rational::new(4.into(), 1.into()),
        vec![ComplexRational::zero(); 3],
    )
    .unwrap();
    let moved = Automorphism::translation(s, zeta)
        .unwrap()
        .compose(&lin)
        .unwrap();
    let f = write(
        dir.path(),
        "moved.json",
        &siegel_core::serial::map_to_json(&moved.as_polymap()),
    );
    let out = run(&[
        "extend",
        "--structure",
        &jb,
        "--map",
        &f,
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["extension"]["verdict"], "extends");
    assert_eq!(report["trace"]["pass"], json!(true));
    // the conjugated element reproduces the original translation parameter
    assert_eq!(
        report["extending_automorphism"]["zeta"],
        json!([["1", "0"], ["0", "1"], ["-2", "5"]])
    );
    // and the emitted element equals the one we built
    let emitted =
        siegel_core::serial::automorphism_from_json(&report["extending_automorphism"]).unwrap();
    assert_eq!(emitted, moved);
}

#[test]
fn order_flag_truncates_before_checking() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    let f = dilation_map_file(dir.path());
    let out = run(&[
        "reconstruct",
        "--structure",
        &jb,
        "--map",
        &f,
        "--order",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let out = run(&[
        "jet-extract",
        "--map",
        &f,
        "--order",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    // at order 2 the cubic slot is not decidable and stays unreported
    assert!(report["antiholo_cubic"].is_null());
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let jb = jb_file(dir.path());
    let f = dilation_map_file(dir.path());
    let args = [
        "extend",
        "--structure",
        &jb,
        "--map",
        &f,
        "--sample",
        "25",
        "--seed",
        "99",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "reports must be deterministic");
}
