//! End-to-end runs of the `cm-lab` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn cm_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cm-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cm-lab-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn exit_codes_follow_the_verdict() {
    let cases = [
        (&["check", "star-alpha"][..], 0),
        (&["check", "square-alpha", "--method", "oracle"][..], 1),
        (&["check", "tree-complex", "--method", "general"][..], 2),
        (&["check", "no-such-input"][..], 3),
        (&["check"][..], 3),
        (&["--help"][..], 0),
    ];
    for (args, code) in cases {
        let o = cm_lab(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn oracle_reports_the_witness() {
    let o = cm_lab(&["check", "square-alpha", "--method", "oracle"]);
    let text = stdout(&o);
    assert!(text.contains("witness a = (0,2,2,0)"), "{text}");
    assert!(text.contains("F2={1,3}, F3={2,4}"), "{text}");
}

#[test]
fn examples_round_trip_through_files() {
    let list = stdout(&cm_lab(&["examples", "list"]));
    for name in ["tree-complex", "star-alpha", "square-alpha", "rp2"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name} missing from\n{list}");
    }
    let shown = stdout(&cm_lab(&["examples", "show", "square-alpha"]));
    let path = temp_file("square-alpha.json", &shown);
    let o = cm_lab(&["check", path.to_str().unwrap(), "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(cm_lab(&["examples", "show", "nope"]).status.code(), Some(3));
}

#[test]
fn bad_input_names_the_field() {
    let path = temp_file(
        "bad.json",
        r#"{"n": 3, "facets": [[1,2],[2,3]], "alpha": [{"facet": 1, "vertex": 2, "value": 2}]}"#,
    );
    let o = cm_lab(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("alpha[0] (facet 1, vertex 2): vertex lies in the facet"),
        "{}",
        stderr(&o)
    );
    let broken = temp_file("broken.json", "{\"n\": 3,\n \"facets\": [[1,2]\n");
    let o = cm_lab(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn cross_validation_is_reproducible() {
    let args = ["cross-validate", "tree-complex", "--samples", "30", "--seed", "9"];
    let (a, b) = (cm_lab(&args), cm_lab(&args));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let other = cm_lab(&["cross-validate", "tree-complex", "--samples", "30", "--seed", "10"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn ideal_expansion() {
    let text = stdout(&cm_lab(&["ideal", "square-alpha", "--expand"]));
    assert!(text.contains("Q_1 = (x3^2,x4)"), "{text}");
    assert!(text.contains("I = (x1x2^3x3^2,x1x4,x2^3x3^3,x2^2x3^3x4)"), "{text}");
    assert!(text.contains("radical = (x1x4,x2x3)"), "{text}");
}

#[test]
fn analyze_reports_characteristic_dependence() {
    let q = stdout(&cm_lab(&["analyze", "rp2"]));
    let f2 = stdout(&cm_lab(&["analyze", "rp2", "--char", "2"]));
    assert!(q.contains("cohen-macaulay: yes"), "{q}");
    assert!(f2.contains("cohen-macaulay: no"), "{f2}");
    assert!(f2.contains("f-vector: (6,15,10)"));
}
