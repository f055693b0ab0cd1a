use std::fs;
use std::path::Path;

use chromacy::cli::{run, EXIT_IO, EXIT_OK, EXIT_UNKNOWN, EXIT_UNSAT, EXIT_USAGE};

fn chromacy(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chromacy").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn verify(cert: &str) -> i32 {
    chromacy(&["verify", "--cert", cert]).0
}

const ONE_TWO: &str = r#"{"format":"chromacy-array/1","space":{"dim":1,"metric":"euclidean"},"squared":false,"columns":[[1],[2]]}"#;

#[test]
fn solve_writes_reverifiable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let array = write(dir.path(), "d.json", ONE_TWO);
    let cert = dir.path().join("c.json");
    let cert = cert.to_str().unwrap();

    let (code, stdout, _) = chromacy(&[
        "solve", "--array", &array, "--window", "0..4", "--out", cert,
    ]);
    assert_eq!(code, EXIT_UNSAT);
    assert!(stdout.starts_with("UNSAT"));
    assert!(fs::read_to_string(cert)
        .unwrap()
        .contains("\"verdict\": \"unsat\""));
    assert_eq!(verify(cert), EXIT_OK);

    let (code, _, _) = chromacy(&[
        "solve", "--array", &array, "--window", "-3..0", "--out", cert,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(verify(cert), EXIT_OK);

    let (code, _, _) = chromacy(&[
        "solve", "--array", &array, "--window", "0..30", "--nodes", "3", "--out", cert,
    ]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert_eq!(verify(cert), EXIT_OK);
}

#[test]
fn period_mt_and_plane_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let array = write(dir.path(), "d.json", ONE_TWO);
    let plane = write(
        dir.path(),
        "p.json",
        r#"{"format":"chromacy-array/1","space":{"dim":2,"metric":"euclidean"},"squared":true,"columns":[[1],[2],[4]]}"#,
    );
    let cert = dir.path().join("c.json");
    let cert = cert.to_str().unwrap();

    assert_eq!(
        chromacy(&["period", "--array", &array, "--pmax", "6", "--out", cert]).0,
        EXIT_UNSAT
    );
    assert_eq!(verify(cert), EXIT_OK);

    let three = write(
        dir.path(),
        "t.json",
        r#"{"format":"chromacy-array/1","space":{"dim":1},"columns":[[1],[2],[3]]}"#,
    );
    assert_eq!(
        chromacy(&["period", "--array", &three, "--pmax", "6", "--out", cert]).0,
        EXIT_OK
    );
    assert!(fs::read_to_string(cert).unwrap().contains("\"periodic\""));
    assert_eq!(verify(cert), EXIT_OK);

    assert_eq!(
        chromacy(&[
            "solve", "--array", &plane, "--window", "0..5", "--window", "0..5", "--out", cert
        ])
        .0,
        EXIT_UNSAT
    );
    assert_eq!(verify(cert), EXIT_OK);

    let (code, _, _) = chromacy(&[
        "mt", "--array", &three, "--window", "0..50", "--seed", "7", "--out", cert,
    ]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(cert).unwrap();
    assert!(text.contains("\"provenance\": \"heuristic\""));
    assert_eq!(verify(cert), EXIT_OK);

    assert_eq!(
        chromacy(&["mt", "--array", &three, "--window", "0..50"]).0,
        EXIT_USAGE
    );
    let (code, _, _) = chromacy(&[
        "mt", "--array", &array, "--window", "0..9", "--seed", "1", "--cap", "50", "--out", cert,
    ]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert_eq!(verify(cert), EXIT_OK);
}

#[test]
fn tampered_and_mismatched_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let array = write(dir.path(), "d.json", ONE_TWO);
    let cert = dir.path().join("c.json");
    let cert = cert.to_str().unwrap();
    chromacy(&[
        "solve", "--array", &array, "--window", "0..3", "--out", cert,
    ]);
    let text = fs::read_to_string(cert).unwrap();

    let bumped = write(
        dir.path(),
        "v.json",
        &text.replace("chromacy-cert/1", "chromacy-cert/9"),
    );
    let (code, _, err) = chromacy(&["verify", "--cert", &bumped]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unsupported"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let sat: serde_json::Value = serde_json::from_str(&text).unwrap();
    let colors = sat["payload"]["colors"].as_array().unwrap().clone();
    let mut flipped = sat.clone();
    flipped["payload"]["colors"] = serde_json::json!(colors.iter().map(|_| 1).collect::<Vec<_>>());
    let flipped = write(dir.path(), "f.json", &flipped.to_string());
    assert_eq!(verify(&flipped), EXIT_UNSAT);
}

#[test]
fn usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = chromacy(&["solve", "--window", "0..4"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(err.lines().count(), 1);
    assert_eq!(chromacy(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(chromacy(&["bounds", "--k", "2", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(
        chromacy(&[
            "solve",
            "--array",
            "/nonexistent/d.json",
            "--window",
            "0..4"
        ])
        .0,
        EXIT_IO
    );

    let bad = write(
        dir.path(),
        "b.json",
        r#"{"format":"chromacy-array/1","space":{"dim":1},"columns":[[0]]}"#,
    );
    let (code, _, err) = chromacy(&["solve", "--array", &bad, "--window", "0..4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("positive"), "{err}");
    let array = write(dir.path(), "d.json", ONE_TWO);
    assert_eq!(
        chromacy(&["solve", "--array", &array, "--window", "4..0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        chromacy(&["solve", "--array", &array, "--window", "0..4", "--window", "0..4"]).0,
        EXIT_USAGE
    );
    assert_eq!(chromacy(&["--help"]).0, EXIT_OK);
}

#[test]
fn bounds_and_number_theory_commands() {
    let (code, out, _) = chromacy(&["bounds", "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("22"));
    let (_, out, _) = chromacy(&["bounds", "--k", "3", "--chi", "7", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["bounds"][1]["value"], "343");

    assert_eq!(chromacy(&["shell", "--n", "2", "--d", "25"]).1.trim(), "12");
    assert_eq!(
        chromacy(&["rn", "--n", "2", "--cap", "8", "--d", "5"]).0,
        EXIT_OK
    );
    assert_eq!(
        chromacy(&["rn", "--n", "2", "--cap", "8", "--d", "25"]).0,
        EXIT_UNSAT
    );

    let dir = tempfile::tempdir().unwrap();
    let star = write(
        dir.path(),
        "s.json",
        r#"{"format":"chromacy-array/1","space":{"dim":2},"squared":true,"columns":[[1],[2],[4],[8]]}"#,
    );
    assert_eq!(chromacy(&["star", "--array", &star]).0, EXIT_OK);
    let not_star = write(
        dir.path(),
        "n.json",
        r#"{"format":"chromacy-array/1","space":{"dim":2},"squared":true,"columns":[[2],[6]]}"#,
    );
    assert_eq!(chromacy(&["star", "--array", &not_star]).0, EXIT_UNSAT);

    let rational = write(
        dir.path(),
        "r.json",
        r#"{"format":"chromacy-array/1","space":{"dim":1},"columns":[["1/2"],["3/4"],[5]]}"#,
    );
    let scaled = dir.path().join("scaled.json");
    let (code, out, _) = chromacy(&[
        "scale",
        "--array",
        &rational,
        "--out",
        scaled.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("scaled by 4"));
    let text = fs::read_to_string(&scaled).unwrap();
    assert_eq!(
        chromacy::format::parse_array(&text)
            .unwrap()
            .integer_columns()
            .unwrap(),
        vec![vec![2], vec![3], vec![20]]
    );
}

#[test]
fn witness_spectrum_and_bound_commands() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("ico.json");
    let points = points.to_str().unwrap();
    assert_eq!(
        chromacy(&["witness", "--kind", "icosahedron", "--out", points]).0,
        EXIT_OK
    );
    let (code, out, _) = chromacy(&["bound", "--points", points]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("k = 3") && out.contains(">= 12"), "{out}");
    let (_, out, _) = chromacy(&["spectrum", "--kind", "subsets", "--n", "4", "--k", "2"]);
    assert!(out.contains("2 distinct distances"), "{out}");
    assert_eq!(
        chromacy(&["witness", "--kind", "subsets", "--k", "2"]).0,
        EXIT_USAGE
    );

    let witness = dir.path().join("w.json");
    let cert = dir.path().join("c.json");
    chromacy(&[
        "bound",
        "--kind",
        "hypercube",
        "--k",
        "2",
        "--array-out",
        witness.to_str().unwrap(),
    ]);
    let (code, _, _) = chromacy(&[
        "solve",
        "--array",
        witness.to_str().unwrap(),
        "--window",
        "0..1",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_UNSAT);
    assert_eq!(verify(cert.to_str().unwrap()), EXIT_OK);
}

#[test]
fn project_and_lift_commands() {
    let dir = tempfile::tempdir().unwrap();
    let vectors = write(
        dir.path(),
        "v.json",
        r#"{"format":"chromacy-vectors/1","dim":2,"columns":[[[1,0]],[[0,1]],[[1,1]]]}"#,
    );
    let (code, out, _) = chromacy(&["project", "--vectors", &vectors, "--lambda", "1,2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("1 | 2 | 3"), "{out}");
    let lift = dir.path().join("lift.json");
    let (code, _, _) = chromacy(&[
        "lift",
        "--vectors",
        &vectors,
        "--lambda",
        "1,2",
        "--window",
        "0..11",
        "--pmax",
        "12",
        "--out",
        lift.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&lift).unwrap()).unwrap();
    assert_eq!(doc["colors"].as_array().unwrap().len(), 144);
    assert!(doc["violations"].as_array().unwrap().is_empty());
    assert_eq!(
        chromacy(&["project", "--vectors", &vectors, "--lambda", "1,-1"]).0,
        EXIT_USAGE
    );
}

#[test]
fn report_command() {
    let (code, out, _) = chromacy(&["report", "--json"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}
