use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tropolink::families;
use tropolink::io::write_graph;

fn tropolink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropolink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn link_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, cert) = (
        path(dir.path(), "theta.json"),
        path(dir.path(), "dumbbell.json"),
        path(dir.path(), "cert.json"),
    );
    write_graph(&a, &families::theta()).unwrap();
    write_graph(&b, &families::dumbbell()).unwrap();
    let out = tropolink(&["link", &a, &b, "-o", &cert]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = tropolink(&["verify", &cert, "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], Value::Bool(true));

    // The dumbbell is not 3-edge-connected.
    let out = tropolink(&["verify", &cert, "--p", "3", "--mode", "3ec"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], Value::Bool(false));
    let out = tropolink(&["verify", &cert, "--p", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn three_ec_link_of_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, cert) = (
        path(dir.path(), "petersen.json"),
        path(dir.path(), "polygon.json"),
        path(dir.path(), "cert.json"),
    );
    write_graph(&a, &families::petersen()).unwrap();
    let out = tropolink(&["polygon", "--p", "3", "--gamma", "10"]);
    std::fs::write(&b, &out.stdout).unwrap();
    let out = tropolink(&["link", &a, &b, "--mode", "3ec", "-o", &cert]);
    assert!(out.status.success());
    let out = tropolink(&["verify", &cert, "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn legged_link_uses_leg_moves() {
    let dir = tempfile::tempdir().unwrap();
    let classes = tropolink::atlas::enumerate_legged(
        3,
        1,
        2,
        tropolink::canon::LegMode::Labeled,
        tropolink::atlas::Filter::All,
    )
    .unwrap();
    let (a, b, cert) = (
        path(dir.path(), "a.json"),
        path(dir.path(), "b.json"),
        path(dir.path(), "cert.json"),
    );
    write_graph(&a, &classes[0]).unwrap();
    write_graph(&b, &classes[1]).unwrap();
    assert!(tropolink(&["link", &a, &b, "-o", &cert]).status.success());
    assert_eq!(
        tropolink(&["verify", &cert, "--p", "3"]).status.code(),
        Some(0)
    );
    assert_eq!(
        tropolink(&["link", &a, &b, "--mode", "3ec"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_input_reports_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, "{\"mode\": \"plain\", \"p\": 3").unwrap();
    let out = tropolink(&["verify", &bad, "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        json(&out)["error"]["kind"],
        Value::String("malformed".into())
    );

    std::fs::write(&bad, r#"{"vertices": [], "half_edges": [], "bogus": 1}"#).unwrap();
    let out = tropolink(&["link", &bad, &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].is_object());
}

#[test]
fn enumeration_commands() {
    let out = tropolink(&["enumerate", "--p", "3", "--genus", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out).as_array().unwrap().len(), 5);
    let out = tropolink(&["enumerate", "--p", "3", "--genus", "3", "--3ec"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 1);

    let out = tropolink(&["movegraph", "--p", "3", "--genus", "3"]);
    assert_eq!(json(&out)["connected"], Value::Bool(true));
    let out = tropolink(&[
        "--format",
        "dot",
        "movegraph",
        "--p",
        "3",
        "--genus",
        "2",
        "--legs",
        "1",
    ]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph") && dot.contains("--"));
}

#[test]
fn poset_and_codim_one() {
    let out = tropolink(&["poset", "--genus", "2", "--legs", "0"]);
    assert_eq!(json(&out)["strata"].as_array().unwrap().len(), 7);
    let out = tropolink(&[
        "--format", "dot", "poset", "--genus", "2", "--legs", "0", "--locus", "pure",
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("digraph"));

    let out = tropolink(&["check-codim1", "--genus", "2", "--legs", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], Value::String("connected".into()));
    let out = tropolink(&[
        "check-codim1",
        "--genus",
        "3",
        "--legs",
        "0",
        "--locus",
        "3ec",
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = tropolink(&[
        "check-codim1",
        "--genus",
        "2",
        "--legs",
        "0",
        "--locus",
        "nowhere",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "k33.json"), path(dir.path(), "prism.json"));
    write_graph(&a, &families::k33()).unwrap();
    write_graph(&b, &families::prism()).unwrap();
    let first = tropolink(&["link", &a, &b, "--mode", "3ec"]).stdout;
    let second = tropolink(&["--jobs", "1", "link", &a, &b, "--mode", "3ec"]).stdout;
    assert!(!first.is_empty());
    assert_eq!(first, second);
    let p1 = tropolink(&["poset", "--genus", "3", "--legs", "0"]).stdout;
    let p2 = tropolink(&["poset", "--genus", "3", "--legs", "0"]).stdout;
    assert_eq!(p1, p2);
}
