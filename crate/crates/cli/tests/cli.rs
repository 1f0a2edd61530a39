use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use qcycle::extension::{family_extension, ExtensionFamily};
use qcycle::io::{write_pair, write_qcycle_set, Format};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcycle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn code(args: &[&str], stdin: &str) -> i32 {
    run(args, stdin).status.code().expect("exit code")
}

fn fixture(name: &str) -> String {
    ok(&["fixture", name], "")
}

fn json_report(name: &str) -> Value {
    serde_json::from_str(&ok(&["--format", "structured", "analyze"], &fixture(name))).unwrap()
}

#[test]
fn analyze_reports_fixture_invariants() {
    let simple4 = json_report("simple4");
    assert_eq!(simple4["simple"], true);
    assert_eq!(simple4["simple_by_blocks"], true);
    assert_eq!(simple4["indecomposable"], true);
    assert_eq!(simple4["primitive"], false);
    assert_eq!(simple4["primitive_level"], "infinite");
    assert_eq!(simple4["block_systems"], serde_json::json!([[[1, 4], [2, 3]]]));

    let primitive4 = json_report("primitive4");
    assert_eq!(primitive4["primitive"], true);
    assert_eq!(primitive4["primitive_level"], 1);

    let nonsimple6 = json_report("nonsimple6");
    assert_eq!(nonsimple6["simple"], false);
    assert_eq!(nonsimple6["left_self_distributive"], true);

    let text = ok(&["analyze"], &fixture("simple4"));
    assert!(text.contains("simple: true"));
}

#[test]
fn report_keys_match_the_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../core/schema/analysis_report.v1.json")).unwrap();
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let properties = schema["properties"].as_object().unwrap();
    for name in ["simple4", "nonsimple6", "base3", "trivial:3", "D1"] {
        let report = json_report(name);
        let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
        for key in &keys {
            assert!(properties.contains_key(key.as_str()), "{name}: unexpected key {key}");
        }
        for key in &required {
            assert!(report.get(key).is_some(), "{name}: missing key {key}");
        }
    }
}

#[test]
fn analyze_is_deterministic() {
    for name in ["simple9", "D3(3)", "J4"] {
        let input = fixture(name);
        let first = ok(&["--format", "structured", "analyze"], &input);
        let second = ok(&["--format", "structured", "analyze"], &input);
        assert_eq!(first, second);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify"], &fixture("simple4")), 0);
    let broken = "n 2\ndot\n1 1\n1 2\ncolon\n1 2\n1 2\n";
    assert_eq!(code(&["verify"], broken), 1);
    let out_of_range = "n 2\ndot\n1 3\n1 2\ncolon\n1 2\n1 2\n";
    assert_eq!(code(&["verify"], out_of_range), 1);
    assert_eq!(code(&["analyze", "--level-only"], &fixture("trivial:3")), 2);
    assert_eq!(code(&["analyze"], "not a table"), 3);
    assert_eq!(code(&["fixture", "nope"], ""), 3);
    assert_eq!(code(&["frobnicate"], ""), 3);
    assert_eq!(code(&["enumerate", "--order", "6"], ""), 4);
    assert_eq!(code(&["enumerate", "--order", "8", "--kind", "cs"], ""), 4);
    assert_eq!(code(&["--help"], ""), 0);
}

#[test]
fn structured_errors_go_to_stderr() {
    let out = run(&["--format", "structured", "fixture", "nope"], "");
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 3);
    assert!(err["message"].as_str().unwrap().contains("nope"));
}

#[test]
fn convert_round_trips() {
    for name in ["simple4", "nonsimple6", "base3"] {
        let x = fixture(name);
        let solution = ok(&["convert"], &x);
        assert!(solution.contains("lambda"));
        assert_eq!(ok(&["convert"], &solution), x);
    }
    let j4 = fixture("J4");
    assert_eq!(ok(&["convert"], &ok(&["convert"], &j4)), j4);
}

#[test]
fn extend_by_pair_file_matches_family() {
    let dir = tempfile::tempdir().unwrap();
    let (base, pair) = family_extension(ExtensionFamily::SquareFree(1)).unwrap();
    let base_path = dir.path().join("base.txt");
    let pair_path = dir.path().join("pair.txt");
    fs::write(&base_path, write_qcycle_set(&base, Format::Text)).unwrap();
    fs::write(&pair_path, write_pair(&pair)).unwrap();
    let from_file = ok(&["extend", path(&base_path), path(&pair_path)], "");
    assert_eq!(from_file, ok(&["extend", "--family", "SF(1)"], ""));
    let report: Value = serde_json::from_str(&ok(&["--format", "structured", "analyze"], &from_file)).unwrap();
    assert_eq!(report["n"], 6);
    assert_eq!(report["square_free"], true);
    assert_eq!(report["indecomposable"], true);
    assert_eq!(report["left_self_distributive"], false);
    assert_eq!(report["right_self_distributive"], false);

    fs::write(&pair_path, "3 2\n1 1 1 : 1 2\n").unwrap();
    assert_eq!(code(&["extend", path(&base_path), path(&pair_path)], ""), 3);
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn quotients_and_isomorphism() {
    let quotients = ok(&["quotients"], &fixture("nonsimple6"));
    assert!(quotients.contains("{{1,6},{2,5},{3,4}}"));
    assert!(ok(&["quotients"], &fixture("simple4")).starts_with("0 nontrivial"));

    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    fs::write(&a, fixture("simple4")).unwrap();
    fs::write(&b, fixture("primitive4")).unwrap();
    assert!(ok(&["isomorphic", path(&a), path(&a)], "").starts_with("isomorphic"));
    let out = run(&["isomorphic", path(&a), path(&b)], "");
    assert!(stdout(&out).starts_with("not isomorphic"), "{}", stdout(&out));
}

#[test]
fn enumerate_counts_and_streams() {
    let report: Value = serde_json::from_str(&ok(&["enumerate", "--order", "3", "--count-only"], "")).unwrap();
    assert_eq!(report["total"], 26);
    let cs: Value =
        serde_json::from_str(&ok(&["enumerate", "--order", "4", "--kind", "cs", "--count-only"], "")).unwrap();
    assert_eq!(cs["total"], 23);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("order4.ndjson");
    ok(
        &[
            "--format",
            "structured",
            "enumerate",
            "--order",
            "4",
            "--require",
            "indecomposable",
            "--out",
            path(&out),
        ],
        "",
    );
    let lines: Vec<Value> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 29);
    assert!(lines.iter().all(|v| v["n"] == 4));

    let none = ok(
        &[
            "enumerate",
            "--order",
            "4",
            "--require",
            "indecomposable",
            "--require",
            "square-free",
            "--forbid",
            "self-distributive",
            "--count-only",
        ],
        "",
    );
    let none: Value = serde_json::from_str(&none).unwrap();
    assert_eq!(none["total"], 0);
}
