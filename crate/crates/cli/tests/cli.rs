use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use moflow_cli::{EXIT_CAP, EXIT_OK, EXIT_SEMANTIC, EXIT_USAGE};

fn moflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moflow"))
        .args(args)
        .env_remove(moflow_cli::CAP_ENV)
        .output()
        .expect("run moflow")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fig2() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances/fig2.momcf")
        .to_str()
        .unwrap()
        .to_string()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn kinds(text: &str, kind: &str) -> usize {
    text.lines().filter(|l| l.starts_with(&format!("kind={kind} "))).count()
}

#[test]
fn validate_accepts_bundled_instance() {
    let o = moflow(&["validate", &fig2()]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = stdout(&o);
    assert!(out.contains("instance=e97197595b5c940294a8145a1f49783f0b767d73ca026b83cea5f0777b4a302f"));
}

#[test]
fn solve_weighted_and_lexicographic() {
    let o = moflow(&["solve", &fig2(), "--lambda", "1/4,1/2,1/4"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("value=21/2"));

    let o = moflow(&["solve", &fig2(), "--lex", "1,2,3"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("outcome=8,16,6"));
}

#[test]
fn zero_weights_are_a_usage_error() {
    let o = moflow(&["solve", &fig2(), "--lambda", "0,0,0"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(moflow(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn limit_truncates_and_reports_it() {
    let dir = tempfile::tempdir().unwrap();
    let star = stdout(&moflow(&["gen", "star", "--n", "4", "--d", "2"]));
    let path = write_temp(&dir, "star.momcf", &star);
    let o = moflow(&["supported", path.to_str().unwrap(), "--limit", "5"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = stdout(&o);
    assert_eq!(kinds(&out, "supported"), 5);
    assert!(out.contains("truncated=true"));
}

#[test]
fn parallel_output_matches_sequential() {
    let one = moflow(&["supported", &fig2(), "--jobs", "1"]);
    let four = moflow(&["supported", &fig2(), "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(moflow(&["supported", &fig2(), "--jobs", "0"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn generators_are_deterministic() {
    let args = ["gen", "random", "--n", "5", "--m", "9", "--d", "3", "--seed", "17"];
    let a = moflow(&args);
    let b = moflow(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(moflow(&["gen", "fig2"]).stdout, std::fs::read(fig2()).unwrap());
}

#[test]
fn csv_has_header_and_summary_on_stderr() {
    let o = moflow(&["classify", &fig2(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("kind,label,outcome,flows,witness"));
    assert_eq!(lines.count(), 10);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("kind=summary"));
}

#[test]
fn oracle_cap_exit_code() {
    let o = moflow(&["classify", &fig2(), "--cap", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_CAP));

    let o = Command::new(env!("CARGO_BIN_EXE_moflow"))
        .args(["classify", &fig2()])
        .env(moflow_cli::CAP_ENV, "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_CAP));
}

#[test]
fn unbalanced_supplies_are_semantic_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.momcf", "p momcf 2 1 1\nn 1 2\nn 2 -1\na 1 2 0 3 1\n");
    let o = moflow(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_SEMANTIC));
    assert!(stdout(&o).contains("kind=violation"));
}

#[test]
fn wrong_cost_arity_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.momcf", "p momcf 2 1 2\nn 1 1\nn 2 -1\na 1 2 0 3 1\n");
    assert_eq!(moflow(&["supported", path.to_str().unwrap()]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn missing_file_is_reported() {
    let o = moflow(&["validate", "/nonexistent/instance.momcf"]);
    assert_ne!(o.status.code(), Some(EXIT_OK));
}
