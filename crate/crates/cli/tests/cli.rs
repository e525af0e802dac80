use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_aimage")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, _) = run(&all);
    (code, serde_json::from_str(&stdout).expect("json report"))
}

#[test]
fn image_of_example2() {
    let (code, out, _) = run(&["image", &data("example2.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("image: ok"));
    assert!(out.contains("fiber oracle agrees on 100/100"));
}

#[test]
fn certify_example2_onto_punctured_plane() {
    let (code, r) = run_json(&["certify", &data("example2.json"), &data("punctured_plane.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "surjective");
    assert_eq!(r["seed"], 0);
}

#[test]
fn toric_cox_reports() {
    let (code, out, _) = run(&["toric", "cox", &data("single_ray.json")]);
    assert_eq!((code, out.lines().next().unwrap()), (1, "toric cox: degenerate"));
    let (code, r) = run_json(&["toric", "cox", &data("weighted.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["degrees"][1]["free"], serde_json::json!([2]));
    let (code, r) = run_json(&["toric", "cox", &data("p1xp1.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["z_components"], serde_json::json!([[0, 1], [2, 3]]));
}

#[test]
fn certify_against_a_fan() {
    let (code, r) = run_json(&["certify", &data("shift.json"), &data("p1.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "not-surjective");
    assert_eq!(r["data"]["witness"], serde_json::json!(["0", "1"]));
    let (code, r) = run_json(&["toric", "check", &data("p1.json"), &data("example1.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["via_saturation"], true);
}

#[test]
fn builders() {
    let (code, r) = run_json(&["slfactor", &data("rotation.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["letters"], serde_json::json!([[1, 2], [2, 1], [1, 2]]));
    assert_eq!(r["data"]["params"], serde_json::json!(["1", "-1", "1"]));
    let (code, r) = run_json(&["gaword", &data("sl2_word.json"), "--target", &data("punctured_plane.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "surjective");
    let (code, out, _) = run(&["surface", "--k", "1", "--samples", "0"]);
    assert_eq!(code, 0, "{out}");
    let (code, r) = run_json(&["curve", &data("points.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["components"].as_array().unwrap().len(), 2);
    let (code, r) = run_json(&["gb", &data("twisted_cubic.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["polynomials"].as_array().unwrap().len(), 4);
}

#[test]
fn errors_exit_with_two_and_a_location() {
    let (code, _, err) = run(&["image", &data("broken.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.json") && err.contains("components[0]"), "{err}");
    let (code, _, err) = run(&["slfactor", &data("singular.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("determinant 2"), "{err}");
    let (code, _, err) = run(&["image", &data("missing.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.json"), "{err}");
    let (code, _, _) = run(&["surface", "--k", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_json_names_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"kind\": \"map\",\n \"source_vars\": [\"x\"\n}").unwrap();
    let (code, _, err) = run(&["image", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let args = ["--seed", "5", "image", &data("restricted.json")];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
}
