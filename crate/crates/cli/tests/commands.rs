use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const BAD_DIRECTION: &str = r#"{
  "rank": 2,
  "dimension": 2,
  "vertices": [
    { "id": "a", "position": ["0", "0"] },
    { "id": "b", "position": ["1", "0"] }
  ],
  "edges": [ { "v": "a", "w": "b", "weight": [0, 1] } ]
}"#;

// Two edges at the origin with parallel weights.
const DEPENDENT: &str = r#"{
  "rank": 2,
  "dimension": 4,
  "vertices": [
    { "id": "o", "position": ["0", "0"] },
    { "id": "p", "position": ["1", "0"] },
    { "id": "q", "position": ["2", "0"] },
    { "id": "r", "position": ["3", "1"] }
  ],
  "edges": [
    { "v": "o", "w": "p", "weight": [1, 0] },
    { "v": "o", "w": "q", "weight": [1, 0] },
    { "v": "p", "w": "r", "weight": [2, 1] },
    { "v": "q", "w": "r", "weight": [1, 1] }
  ]
}"#;

#[test]
fn validate_accepts_catalog_documents() {
    let o = run(&["validate", "--example", "su3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn validate_names_the_non_parallel_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, BAD_DIRECTION).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL edge-direction"), "{text}");
    assert!(
        text.contains("edge a -- b: weight [0, 1] is not parallel"),
        "{text}"
    );
}

#[test]
fn validate_flags_dependent_weights() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dep.json");
    fs::write(&path, DEPENDENT).unwrap();
    let o = run(&["validate", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let gkm = v
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["invariant"] == "gkm-independence")
        .unwrap();
    assert_eq!(gkm["passed"], false);
    assert_eq!(gkm["issues"][0]["subject"], "vertex o");
}

#[test]
fn analyze_rejects_malformed_json_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\n  \"rank\": 1,\n  \"dimension\": oops\n}").unwrap();
    let o = run(&["analyze", path.to_str().unwrap(), "--xi", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn analyze_rejects_non_generic_circles() {
    let o = run(&["analyze", "--example", "su3", "--xi", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_example_is_an_input_error() {
    let o = run(&["analyze", "--example", "cp0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn text_and_json_agree_on_the_verdict() {
    let j: serde_json::Value =
        serde_json::from_slice(&run(&["analyze", "--example", "cp2"]).stdout).unwrap();
    let t = stdout(&run(&["analyze", "--example", "cp2", "--format", "text"]));
    assert_eq!(j["schema"], 1);
    assert_eq!(j["hard_lefschetz"]["holds"], true);
    assert!(t.contains("hard lefschetz: holds"));
}

#[test]
fn timings_are_opt_in() {
    let plain = stdout(&run(&["analyze", "--example", "cp1"]));
    assert!(!plain.contains("timings_ms"));
    let timed = stdout(&run(&["analyze", "--example", "cp1", "--timings"]));
    assert!(timed.contains("timings_ms"));
}

#[test]
fn shift_min_normalizes_levels() {
    let v: serde_json::Value =
        serde_json::from_slice(&run(&["analyze", "--example", "su3", "--shift-min"]).stdout)
            .unwrap();
    let first = &v["profile"]["levels"][0]["constant"];
    assert_eq!(first, "0");
}

#[test]
fn render_writes_svg_and_refuses_unprojected_higher_rank() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("so5.svg");
    let o = run(&[
        "render",
        "--example",
        "so5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle").count(), 4);

    let o = run(&["render", "--example", "cp3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["render", "--example", "cp3", "--project", "1,0,1;0,1,1"]);
    assert!(o.status.success());
}
