use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cubis::RunReport;

fn cubis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const K5_PENDANT: &str = "a b\na c\na d\na e\nb c\nb d\nb e\nc d\nc e\nd e\ne f\n";

#[test]
fn solve_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.edges", "# triangle\n1 2\n2 3\n3 1\n");
    let out = cubis(&["solve", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = RunReport::from_json(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(report.omega, 3);
    assert_eq!(report.network, "tri");
    let mut clique = report.clique.clone();
    clique.sort();
    assert_eq!(clique, ["1", "2", "3"]);
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k5.edges", K5_PENDANT);
    let out = cubis(&["solve", &path, "--json", "--name", "k5"]);
    let line = String::from_utf8(out.stdout).unwrap();
    let line = line.trim();
    let report = RunReport::from_json(line).unwrap();
    assert_eq!(report.to_json(), line);
    assert_eq!(report.omega, 5);
}

#[test]
fn baseline_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k5.edges", K5_PENDANT);
    let out = cubis(&["solve", &path, "--json", "--baseline"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let second: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(second["baseline"]["omega"], 5);
}

#[test]
fn cores_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k5.edges", K5_PENDANT);
    let out = cubis(&["cores", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ladder"], serde_json::json!([4, 1]));
    assert_eq!(v["c_max"], 4);
    assert_eq!(v["counts"][0]["nodes"], 5);
}

#[test]
fn oracle_on_matrix_market() {
    let dir = tempfile::tempdir().unwrap();
    let text =
        "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 5\n1 2\n1 3\n2 3\n3 4\n2 4\n";
    let path = write(dir.path(), "g.mtx", text);
    let out = cubis(&["oracle", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["omega"], 3);
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(cubis(&[]).status.code(), Some(1));
    assert_eq!(
        cubis(&["solve", "/nonexistent/graph.edges"]).status.code(),
        Some(1)
    );
    assert_eq!(
        cubis(&["solve", "x.edges", "--topl", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(cubis(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.edges", "1 2\n3\n");
    let out = cubis(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.edges:2:"));
}

#[test]
fn bench_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k5.edges", K5_PENDANT);
    let good = write(
        dir.path(),
        "good.json",
        r#"{"entries":[{"name":"k5","path":"k5.edges","expected_omega":5,"expected_cubis1":[5,10]}]}"#,
    );
    let out = cubis(&["bench", &good, "--csv", "--sweep-topl", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.split(',').count() == 18));

    let wrong = write(
        dir.path(),
        "wrong.json",
        r#"{"entries":[{"name":"k5","path":"k5.edges","expected_omega":6}]}"#,
    );
    assert_eq!(cubis(&["bench", &wrong]).status.code(), Some(2));

    let missing = write(
        dir.path(),
        "missing.json",
        r#"{"entries":[{"name":"k5","path":"k5.edges","expected_omega":6},{"name":"gone","path":"gone.edges"}]}"#,
    );
    assert_eq!(
        cubis(&["bench", &missing, "--jsonl"]).status.code(),
        Some(1)
    );
}
