use std::path::Path;
use std::process::{Command, Output};

const GRID: &str = r#"{"dimension": 2, "families": [
  {"label": "h", "sets": [[["-1","0"],["3","0"]], [["-1","1"],["3","1"]], [["-1","2"],["3","2"]]]},
  {"label": "v", "sets": [[["0","-1"],["0","3"]], [["1","-1"],["1","3"]], [["2","-1"],["2","3"]]]}
]}"#;

fn tvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvlab"))
        .args(args)
        .env_remove("TVLAB_SIZE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn search_prints_witness_or_none() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.json", GRID);
    let o = tvlab(&["tverberg", "search", "--file", &grid, "--family", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partition"], serde_json::json!([[0, 2], [1]]));

    let o = tvlab(&["tverberg", "search", "--file", &grid, "--family", "0", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"dimension\": 2, \"families\": [");
    let o = tvlab(&["tverberg", "search", "--file", &bad, "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = tvlab(&["colorful", "check", "--file", "/nonexistent/x.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tvlab(&["experiment", "theorem1", "--d", "2", "--m", "2", "--n", "3", "--k", "2", "--scheme", "grid"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn morse_report() {
    let o = tvlab(&["complex", "morse", "--n", "4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["acyclic"], true);
    assert_eq!(v["report"]["critical"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["critical"][0]["dim"], 2);
}

#[test]
fn theorem_one_batch_is_reproducible() {
    let args = ["experiment", "theorem1", "--d", "2", "--m", "2", "--k", "2", "--n", "3", "--seed", "7", "--trials", "100"];
    let a = tvlab(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["counts"]["SUCCESS"], 100);
    assert_eq!(stdout(&a), stdout(&tvlab(&args)));
}

#[test]
fn size_cap_is_an_input_error() {
    let o = tvlab(&["complex", "quillen", "--n", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_tvlab"))
        .args(["complex", "homology", "--n", "4", "--k", "2"])
        .env("TVLAB_SIZE_CAP", "vertices=5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn extremal_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext.json");
    let o = tvlab(&["construct", "extremal", "--d", "2", "--m", "2", "--k", "2", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let path = out.to_str().unwrap();
    assert_eq!(tvlab(&["colorful", "check", "--file", path]).status.code(), Some(0));
    let o = tvlab(&["tverberg", "search", "--file", path, "--k", "2"]);
    assert_eq!(stdout(&o).trim(), "none");
    let o = tvlab(&["sarkaria", "avoid-b", "--file", path, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_positive"], true);
}
