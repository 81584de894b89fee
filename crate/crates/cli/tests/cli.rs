use std::process::{Command, Output};

use serde_json::Value;

fn qbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbundle")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let out = qbundle(args);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

#[test]
fn groebner_verify_json() {
    let (v, code) = json_of(&["groebner", "verify", "--n", "6", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["gb_holds"], true);
    assert_eq!(v["match"], true);
}

#[test]
fn degree_text() {
    let out = qbundle(&["degree", "--n", "5"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("formula 12 = facets 12 = Hilbert degree 12"), "{s}");
}

#[test]
fn t1_slice_n5() {
    let (v, code) = json_of(&["t1", "slice", "--n", "5", "--delta", "-2,1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["t1_dim"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(qbundle(&["degree", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qbundle(&["t1", "slice", "--n", "5", "--delta", "x"]).status.code(), Some(2));
    assert!(!qbundle(&["--frobnicate"]).status.success());
}

#[test]
fn out_file_and_threads() {
    let dir = std::env::temp_dir().join(format!("qbundle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut seen = Vec::new();
    for t in ["1", "3"] {
        let path = dir.join(format!("hull-{t}.json"));
        let out = qbundle(&["hull", "example-6-7", "--json", "--threads", t, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        seen.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(seen[0], seen[1]);
    let v: Value = serde_json::from_slice(&seen[0]).unwrap();
    assert_eq!(v["lower_facets"], 33);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn complex_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("qbundle-cx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    std::fs::write(&a, "free[1] free[2]\nfree[2] free[3]\nfree[1] free[3]\n").unwrap();
    std::fs::write(&b, "free[7]\n").unwrap();
    let (v, code) = json_of(&["complex", "build", "join", "--left", a.to_str().unwrap(), "--right", b.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["f_vector"], serde_json::json!([1, 4, 6, 3]));
    let (v, _) = json_of(&[
        "complex", "build", "stellar", "--input", a.to_str().unwrap(), "--face", "free[1] free[2]", "--vertex", "free[9]", "--json",
    ]);
    assert_eq!(v["facets"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lemma_and_oracle_exit_codes() {
    assert!(qbundle(&["lemma", "normalform", "--n", "6", "--trials", "20", "--seed", "3"]).status.success());
    assert!(qbundle(&["oracle", "--n", "5", "--trials", "5"]).status.success());
}
