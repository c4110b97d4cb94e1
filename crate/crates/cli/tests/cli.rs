//! End-to-end tests of the `netfmt` binary: outputs and exit statuses.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

fn netfmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netfmt"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Converts the bibliography tables to NetsJSON inside `dir`.
fn bib_json(dir: &Path) -> PathBuf {
    let json = dir.join("bib.json");
    let out = netfmt(&[
        "convert",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
        "--to",
        "netsjson",
        "-o",
        path_str(&json),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    json
}

#[test]
fn tables_convert_to_the_golden_net_file() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("bib.net");
    let out = netfmt(&[
        "convert",
        "--from",
        "csv",
        "--to",
        "net",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
        "-o",
        path_str(&net),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&net).unwrap(),
        fs::read_to_string(fixture("bib.net")).unwrap()
    );
}

#[test]
fn net_survives_a_netsjson_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bib.json");
    let net = dir.path().join("back.net");
    let out = netfmt(&[
        "convert",
        "-i",
        path_str(&fixture("bib.net")),
        "-o",
        path_str(&json),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let out = netfmt(&["convert", "-i", path_str(&json), "-o", path_str(&net)]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&net).unwrap(),
        fs::read_to_string(fixture("bib.net")).unwrap()
    );
}

#[test]
fn stdout_output_and_date_stamp() {
    let out = netfmt(&[
        "convert",
        "-i",
        path_str(&fixture("bib.net")),
        "--to",
        "netsjson",
        "--date",
        "2020-02-29",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"created\": \"2020-02-29\""), "{text}");
    assert!(text.contains("\"modified\": \"2020-02-29\""), "{text}");
}

#[test]
fn source_date_epoch_sets_the_stamp() {
    let out = netfmt(&[
        "convert",
        "-i",
        path_str(&fixture("bib.net")),
        "--to",
        "netsjson",
        "--compact",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"created\":\"2023-11-14\""), "{text}");
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn empty_tables_convert() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("n.csv");
    let links = dir.path().join("l.csv");
    fs::write(&nodes, "name\n").unwrap();
    fs::write(&links, "from;relation;to\n").unwrap();
    let json = dir.path().join("empty.json");
    let out = netfmt(&[
        "convert",
        "--nodes",
        path_str(&nodes),
        "--links",
        path_str(&links),
        "-o",
        path_str(&json),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let out = netfmt(&["validate", "--level", "strict", path_str(&json)]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
}

#[test]
fn tables_survive_a_table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (n, l) = (dir.path().join("n.csv"), dir.path().join("l.csv"));
    let out = netfmt(&[
        "convert",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
        "--out-nodes",
        path_str(&n),
        "--out-links",
        path_str(&l),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let net = dir.path().join("bib.net");
    let out = netfmt(&[
        "convert",
        "--nodes",
        path_str(&n),
        "--links",
        path_str(&l),
        "-o",
        path_str(&net),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&net).unwrap(),
        fs::read_to_string(fixture("bib.net")).unwrap()
    );
}

#[test]
fn factorized_output_converts_back() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f.json");
    let out = netfmt(&[
        "convert",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
        "--factorize",
        "--base",
        "0",
        "-o",
        path_str(&json),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"nodeCoding\""), "{text}");
    assert!(text.contains("\"org\": 0"), "{text}");
    let net = dir.path().join("bib.net");
    let out = netfmt(&["convert", "-i", path_str(&json), "-o", path_str(&net)]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&net).unwrap(),
        fs::read_to_string(fixture("bib.net")).unwrap()
    );
}

#[test]
fn strict_validation_of_a_converted_file_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let json = bib_json(dir.path());
    let out = netfmt(&["validate", "--level", "strict", path_str(&json)]);
    assert_eq!(status(&out), 0);
    assert_eq!(stderr(&out), "");
}

#[test]
fn counter_mismatch_is_an_error_only_when_strict() {
    let dir = tempfile::tempdir().unwrap();
    let json = bib_json(dir.path());
    let text = fs::read_to_string(&json)
        .unwrap()
        .replace("\"nNodes\": 16", "\"nNodes\": 15");
    fs::write(&json, text).unwrap();

    let out = netfmt(&["validate", "--level", "strict", path_str(&json)]);
    assert_eq!(status(&out), 1);
    assert!(
        stderr(&out).contains("error[counter-mismatch]"),
        "{}",
        stderr(&out)
    );

    let out = netfmt(&["validate", path_str(&json)]);
    assert_eq!(status(&out), 0);
    assert!(
        stderr(&out).contains("warning[counter-mismatch]"),
        "{}",
        stderr(&out)
    );

    let out = netfmt(&[
        "validate",
        "--level",
        "strict",
        "--report",
        "json",
        path_str(&json),
    ]);
    let line = stderr(&out);
    let finding: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(finding["rule"], "counter-mismatch");
}

#[test]
fn syntax_errors_and_missing_files_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"netsJSON\": \"basic\",\n").unwrap();
    let out = netfmt(&["validate", path_str(&broken)]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("json-syntax"), "{}", stderr(&out));

    let missing = dir.path().join("absent.json");
    let out = netfmt(&["validate", path_str(&missing)]);
    assert_eq!(status(&out), 2);
}

#[test]
fn validating_several_files_reports_each() {
    let dir = tempfile::tempdir().unwrap();
    let good = bib_json(dir.path());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[]").unwrap();
    let out = netfmt(&["validate", path_str(&good), path_str(&bad)]);
    assert_eq!(status(&out), 1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout,
        format!("{}: ok\n{}: invalid\n", path_str(&good), path_str(&bad))
    );
}

#[test]
fn info_prints_counts() {
    let out = netfmt(&[
        "info",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    for row in [
        "nodes: 16",
        "arcs: 19",
        "edges: 0",
        "relations: 5",
        "modes: 6",
    ] {
        assert!(text.contains(row), "{row} missing from\n{text}");
    }
}

#[test]
fn partition_via_the_node_table() {
    let out = netfmt(&[
        "partition",
        "-i",
        path_str(&fixture("bib.net")),
        "--via-csv",
        path_str(&fixture("bibNodes.csv")),
        "--property",
        "sex",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let codes: Vec<&str> = text.lines().skip(2).collect();
    let mut expected = vec!["2", "2", "1", "2", "1", "2"];
    expected.extend(["0"; 10]);
    assert_eq!(codes, expected);
}

#[test]
fn partition_of_table_input() {
    let out = netfmt(&[
        "partition",
        "--nodes",
        path_str(&fixture("bibNodes.csv")),
        "--links",
        path_str(&fixture("bibLinks.csv")),
        "--property",
        "mode",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("*vertices 16"), "{text}");
}

#[test]
fn unknown_property_exits_with_1() {
    let out = netfmt(&[
        "partition",
        "-i",
        path_str(&fixture("bib.net")),
        "--via-csv",
        path_str(&fixture("bibNodes.csv")),
        "--property",
        "height",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 1);
    assert!(
        stderr(&out).contains("error[unknown-property]"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn zero_base_pajek_output_is_a_usage_error() {
    let out = netfmt(&[
        "convert",
        "-i",
        path_str(&fixture("bib.net")),
        "--to",
        "net",
        "--base",
        "0",
        "-o",
        "-",
    ]);
    assert_eq!(status(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn failed_conversion_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.net");
    fs::write(&bad, "*vertices 2\n1 \"a\"\n*arcs\n1 9\n").unwrap();
    let target = dir.path().join("out.json");
    let out = netfmt(&["convert", "-i", path_str(&bad), "-o", path_str(&target)]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("parse-error"), "{}", stderr(&out));
    assert!(!target.exists());
}
