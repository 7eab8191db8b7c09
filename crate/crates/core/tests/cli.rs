use std::io::Write;
use std::process::{Command, Output, Stdio};

const SAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/blend.bk");

fn blendkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blendkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_counts_declarations() {
    let o = blendkit(&["validate", "--file", SAMPLE]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("valid document: 12 declarations"), "{}", stdout(&o));
}

#[test]
fn blend_reports_the_apex() {
    let o = blendkit(&["blend", "Blend", "--file", SAMPLE, "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // generic h is identified with house h and boat b; w is kept apart
    assert_eq!(v["apex"], "{b, f, w}");
    assert_eq!(v["strict"], serde_json::json!([true, true]));
    let dot = stdout(&blendkit(&["blend", "Blend", "--file", SAMPLE, "--dot"]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"House\" -> \"blend\""));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&blendkit(&["satisfy", "Dwelling", "Shelter", "--file", SAMPLE])), 0);
    // the empty model of Shelter is not a model of h
    assert_eq!(code(&blendkit(&["entails", "Shelter", "shelter", "--file", SAMPLE])), 1);
    assert_eq!(code(&blendkit(&["satisfy", "Nobody", "Shelter", "--file", SAMPLE])), 2);
    assert_eq!(code(&blendkit(&["frobnicate"])), 2);
    assert_eq!(code(&blendkit(&["blend", "Blend", "--file", "/nonexistent.bk"])), 2);
    assert_eq!(code(&blendkit(&["blend"])), 2);
}

#[test]
fn resource_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("big.bk");
    let cfg = dir.path().join("small.toml");
    std::fs::write(
        &doc,
        "sig A = {p, q, r}\nsig B = {a}\npmorph f : A -> B on {p} { p |-> a }\nmodel M : B = {a}\n",
    )
    .unwrap();
    std::fs::write(&cfg, "pl_signature_cap = 2\n").unwrap();
    let o = blendkit(&["reduct", "f", "M", "--file", doc.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = blendkit(&["reduct", "f", "M", "--file", doc.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    // q and r are unconstrained: 2^2 reducts
    assert!(stdout(&o).starts_with("4 reducts"), "{}", stdout(&o));
}

#[test]
fn json_errors_go_to_stdout() {
    let o = blendkit(&["satisfy", "Nobody", "Shelter", "--file", SAMPLE, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], 2);
    assert!(v["error"].as_str().unwrap().contains("Nobody"));
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blendkit"))
        .args(["factorize", "toBoat", "--file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read_to_string(SAMPLE).unwrap().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("image: {b}\n"));
}

#[test]
fn every_command_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["validate"],
        &["compose", "toBoat", "toBoat"],
        &["factorize", "toHouse"],
        &["pushout", "toHouse", "toHouse"],
        &["blend", "Blend"],
        &["reduct", "toBoat", "Vessel"],
        &["satisfy", "Vessel", "Floats"],
        &["entails", "Floats", "shelter"],
        &["classify-theory-morphism", "toHouse", "Generic", "Shelter"],
        &["amalgamate", "Blend", "Shared", "Dwelling", "Vessel", "--minimal"],
        &["verify-laws", "--iters", "3", "--seed", "5"],
    ];
    for args in runs {
        for json in [false, true] {
            let mut a: Vec<&str> = args.to_vec();
            a.extend(["--file", SAMPLE]);
            if json {
                a.push("--json");
            }
            let first = blendkit(&a);
            let second = blendkit(&a);
            assert_eq!(first.stdout, second.stdout, "{a:?}");
            assert_eq!(first.status, second.status, "{a:?}");
        }
    }
}

#[test]
fn json_documents_are_accepted() {
    let text = std::fs::read_to_string(SAMPLE).unwrap();
    let doc = blendkit::dsl::parse(&text).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    std::fs::write(&path, blendkit::dsl::to_json(&doc)).unwrap();
    let from_json = blendkit(&["blend", "Blend", "--file", path.to_str().unwrap()]);
    let from_text = blendkit(&["blend", "Blend", "--file", SAMPLE]);
    assert_eq!(code(&from_json), 0);
    assert_eq!(from_json.stdout, from_text.stdout);
}

#[test]
fn squares_and_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sq.bk");
    std::fs::write(
        &path,
        "sig A = {a}\nsig B = {b, c}\nmorph f : A -> B { a |-> b }\nmorph i : B -> B { b |-> b, c |-> c }\n\
         square Q = f, f, i, i\n\
         theory T : A = { a }\ntheory U : B = { !b }\n\
         diagram D { node X : T; node Y : U; edge e : X -> Y = f; }\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = blendkit(&["check-square", "Q", "--file", p]);
    assert!(stdout(&o).starts_with("Q: "), "{}", stdout(&o));
    // X must satisfy a, yet is the reduct of a model of !b along a |-> b
    let o = blendkit(&["amalgamate", "D", "--file", p]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}
