use std::path::Path;

use endoclass::ingest::cli::run_cli;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("endoclass").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn synth(dir: &Path, spec: &str) -> String {
    let spec = write(dir, "spec.json", spec);
    let (code, out, err) = run(&["synth", &spec]);
    assert_eq!(code, 0, "{err}");
    write(dir, "packet.json", &out)
}

#[test]
fn symbol_minus_one_minus_one() {
    let (code, out, _) = run(&["symbol", "--field", "x", "--", "-1", "-1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], serde_json::json!(["2.0", "oo.0"]));
    let (code, out, _) = run(&["--format", "text", "symbol", "--field", "x^2 - 2", "a", "-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("class: {2.0, oo.0}"));
    // Z[sqrt5] is not maximal at 2
    let (code, _, err) = run(&["symbol", "--field", "x^2 - 5", "a", "-1"]);
    assert_eq!(code, 3);
    assert!(err.contains("index"));
}

#[test]
fn compute_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let packet = synth(dir.path(), r#"{"base_field":[0,1],"twists":[],"prime_count":30,"seed":4}"#);
    let (code, out, _) = run(&["compute", &packet]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], serde_json::json!([]));
    assert_eq!(v["m"], 0);

    let packet = synth(dir.path(), r#"{"base_field":[0,1],"twists":[["-1"]],"radicands":[3],"prime_count":40,"seed":9}"#);
    let first = run(&["compute", &packet]);
    let second = run(&["compute", &packet]);
    assert_eq!(first.0, 0);
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(v["class"], serde_json::json!(["2.0", "3.0"]));
    let (code, out, _) = run(&["twists", &packet]);
    assert_eq!(code, 0);
    assert!(out.contains("\"gamma_order\": 2"));
    let (code, _, _) = run(&["verify", &packet]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let even = write(
        dir.path(),
        "even.json",
        r#"{"base_field":[-2,0,1],"hecke_field":[0,1],"level_norm":1,"eigenvalues":[],"twist_search_basis":[]}"#,
    );
    assert_eq!(run(&["compute", &even]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["compute", "/nonexistent/packet.json"]).0, 1);
    let packet = synth(dir.path(), r#"{"base_field":[0,1],"twists":[["-1"]],"prime_count":30,"seed":1}"#);
    let (code, _, err) = run(&["--min-primes", "1000", "compute", &packet]);
    assert_eq!(code, 3);
    assert!(err.contains("detect_inner_twists"), "{err}");
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn import_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let packet = synth(dir.path(), r#"{"base_field":[1,-2,-1,1],"twists":[["0","1","0"]],"prime_count":30,"seed":2}"#);
    let (code, dump, _) = run(&["export", &packet]);
    assert_eq!(code, 0);
    let dump = write(dir.path(), "dump.txt", &dump);
    let (code, back, _) = run(&["import", &dump]);
    assert_eq!(code, 0);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&packet).unwrap()).unwrap();
    let back: Value = serde_json::from_str(&back).unwrap();
    assert_eq!(original["eigenvalues"], back["eigenvalues"]);
}
