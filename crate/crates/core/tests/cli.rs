//! End-to-end runs of the `specrat` binary.

use std::process::{Command, Output};

use serde_json::Value;

const QUARTER: &str = r#"{"mode":"exact","entries":[{"num":0,"den":1},{"num":1,"den":4}]}"#;
const HALF: &str = r#"{"mode":"exact","entries":[{"num":0,"den":1},{"num":1,"den":2}]}"#;

fn specrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specrat")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", QUARTER], 0),
        (&["verify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", HALF], 0),
        (&["decide", "--cluster", r#"{"elements":[0,1,3]}"#], 0),
        (&["decide", "--cluster", r#"{"elements":[0]}"#], 2),
        (&["certify", "--cluster", r#"{"elements":[0,2]}"#], 0),
        (&["verify", "--cluster", r#"{"elements":[1,2]}"#, "--gamma", QUARTER], 1),
        (&["verify", "--cluster", r#"{"elements":[0,2],"x":1}"#, "--gamma", QUARTER], 1),
        (&["verify", "--cluster", "/nonexistent/cluster.json", "--gamma", QUARTER], 1),
        (&["flags", "--set", "[1,2,3]", "--r", "0", "--s", "1"], 1),
        (&["no-such-command"], 1),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let out = specrat(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verify_reports_the_verdict() {
    let yes = stdout_json(&specrat(&["verify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", QUARTER]));
    let no = stdout_json(&specrat(&["verify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", HALF]));
    assert_eq!(yes["is_spectral_pair"], Value::Bool(true));
    assert_eq!(no["is_spectral_pair"], Value::Bool(false));
}

#[test]
fn documents_can_come_from_files() {
    let dir = std::env::temp_dir().join(format!("specrat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c = dir.join("cluster.json");
    let g = dir.join("gamma.json");
    std::fs::write(&c, r#"{"elements":[0,2]}"#).unwrap();
    std::fs::write(&g, QUARTER).unwrap();
    let from_files = specrat(&["verify", "--cluster", c.to_str().unwrap(), "--gamma", g.to_str().unwrap()]);
    let inline = specrat(&["verify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", QUARTER]);
    assert_eq!(from_files.stdout, inline.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Output> = (0..3)
        .map(|_| specrat(&["decide", "--cluster", r#"{"elements":[0,1,2,4]}"#, "--den-max", "8"]))
        .collect();
    assert!(runs.windows(2).all(|w| w[0].stdout == w[1].stdout && w[0].status == w[1].status));
}

#[test]
fn emitted_certificates_revalidate_and_round_trip() {
    let produced = [
        specrat(&["certify", "--cluster", r#"{"elements":[0,2]}"#]),
        specrat(&["certify", "--cluster", r#"{"elements":[0,1,3]}"#]),
        specrat(&["certify", "--cluster", r#"{"elements":[0,2]}"#, "--gamma", QUARTER]),
        specrat(&["decide", "--cluster", r#"{"elements":[0,1,3]}"#]),
        specrat(&["decide", "--cluster", r#"{"elements":[0,2]}"#]),
    ];
    for out in produced {
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let doc = String::from_utf8(out.stdout).unwrap();
        let check = specrat(&["check-certificate", &doc]);
        assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stderr));
        assert_eq!(stdout_json(&check)["valid"], Value::Bool(true));
        let again = specrat(&["roundtrip", &doc]);
        assert_eq!(String::from_utf8(again.stdout).unwrap(), doc);
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let out = specrat(&["certify", "--cluster", r#"{"elements":[0,2]}"#]);
    let mut doc = stdout_json(&out);
    doc["denominator_divides"] = Value::from(3);
    let check = specrat(&["check-certificate", &doc.to_string()]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn round_trip_preserves_input_documents() {
    for doc in [
        r#"{"elements":[0,1,3]}"#,
        QUARTER,
        r#"{"mode":"float","entries":[0.0,0.25]}"#,
        r#"{"mode":"symbolic","entries":[{"num":0,"den":1},{"num":1,"den":3,"gens":{"b1":{"num":1,"den":2}}}]}"#,
        r#"{"m":-3,"r":1,"N":4,"s":2}"#,
    ] {
        let out = specrat(&["roundtrip", doc]);
        assert_eq!(out.status.code(), Some(0), "{doc}");
        let back: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(back, serde_json::from_str::<Value>(doc).unwrap());
    }
}

#[test]
fn tiling_complements_of_a_pair() {
    let out = specrat(&["tile", "--cluster", r#"{"elements":[0,2]}"#, "--n", "4"]);
    assert_eq!(stdout_json(&out)["complements"], serde_json::json!([[0, 1], [0, 3]]));
}
