//! End-to-end runs of the compiled binary: exit codes, stdout/stderr
//! routing, byte-stable output across runs, and the search -> check-cert
//! round trip over the checked-in fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chplane"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chplane-bin-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn cartan_command_prints_exact_angles_to_stdout() {
    let output = run(&["cartan", "ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "1/4*pi\n");
    assert!(stderr(&output).is_empty());

    let output = run(&["cartan", "ball: 0,1,1", "ball: i,0,1", "ball: 1,0,1"]);
    assert_eq!(stdout(&output), "-1/4*pi\n");
}

#[test]
fn verify_paper_exits_zero_and_is_byte_stable() {
    let first = run(&["verify-paper"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let text = stdout(&first);
    assert!(text.contains("bound: 2/9*pi^2"), "{text}");
    assert!(text.contains("result: PASS"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");

    let second = run(&["verify-paper"]);
    assert_eq!(stdout(&second), text, "reports must not drift between runs");
}

#[test]
fn search_and_check_cert_round_trip_on_fixture_files() {
    let points = fixture("reference_points.txt");
    let group = fixture("reference_group.txt");
    assert!(points.is_file(), "missing {}", points.display());
    assert!(group.is_file(), "missing {}", group.display());

    let dir = temp_dir("round-trip");
    let cert = dir.join("searched.cert");
    let args = [
        "search",
        "--points",
        points.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ];

    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let report = stdout(&first);
    assert!(report.contains("bound: 2/9*pi^2"), "{report}");
    let written = std::fs::read_to_string(&cert).unwrap();
    assert!(written.starts_with("certificate v1\n"), "{written}");

    // Determinism: stdout and the emitted certificate are byte-identical.
    let second = run(&args);
    assert_eq!(stdout(&second), report);
    assert_eq!(std::fs::read_to_string(&cert).unwrap(), written);

    let check = run(&["check-cert", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
    assert!(
        stdout(&check).contains("result: PASS"),
        "{}",
        stdout(&check)
    );

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn failed_verification_exits_one_on_stdout() {
    let points = fixture("reference_points.txt");
    let group = fixture("reference_group.txt");
    let dir = temp_dir("tamper");
    let cert = dir.join("searched.cert");
    let output = run(&[
        "search",
        "--points",
        points.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));

    // A wrong bound still parses; the checker must reject it with exit 1.
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replace("bound: 2/9 *pi^2", "bound: 1/3 *pi^2");
    assert_ne!(tampered, text);
    std::fs::write(&cert, tampered).unwrap();

    let check = run(&["check-cert", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("FAIL"), "{}", stdout(&check));
    assert!(stderr(&check).is_empty());

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_two_on_stderr() {
    // Malformed point literal.
    let output = run(&["cartan", "ball: 1,0", "ball: i,0,1", "ball: 0,1,1"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout(&output).is_empty());
    assert!(
        stderr(&output).starts_with("error: "),
        "{}",
        stderr(&output)
    );

    // Missing certificate file.
    let output = run(&["check-cert", "/nonexistent/path.cert"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).starts_with("error: "),
        "{}",
        stderr(&output)
    );

    // Unknown subcommand comes from the parser with the same code.
    let output = run(&["no-such-command"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for name in [
        "cartan",
        "cupsq",
        "verify-paper",
        "search",
        "check-cert",
        "convert",
    ] {
        assert!(text.contains(name), "help must list {name}: {text}");
    }

    let output = run(&["--version"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("chplane"));
}
