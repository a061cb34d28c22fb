//! Command-line behavior: exit codes, diagnostics, written artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const DEP: &str = "android.os.Vibrator#vibrate(long)";
const UPD: &str = "android.os.Vibrator#vibrate(android.os.VibrationEffect)";

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_api-evolve")).args(args).current_dir(dir).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let case = corpus().join("cases/vibrate");
    fs::copy(case.join("example.java"), dir.path().join("example.java")).unwrap();
    fs::copy(case.join("targets/Main.java"), dir.path().join("main.java")).unwrap();
    dir
}

fn generate(dir: &Path) {
    let o = run(dir, &["--generate-patch", DEP, UPD, "--input", "example.java", "--output", "p.cocci"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn apply_writes_output_and_report() {
    let dir = setup();
    generate(dir.path());
    let o = run(
        dir.path(),
        &["--apply-patch", DEP, UPD, "--input", "main.java", "--patch", "p.cocci", "--output", "out.java", "--report", "r.json"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = fs::read_to_string(dir.path().join("out.java")).unwrap();
    assert!(out.contains("SDK_INT >= android.os.Build.VERSION_CODES.O"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    for key in ["file", "sitesFound", "sitesUpdated", "skipped", "copied"] {
        assert!(report.get(key).is_some(), "report lacks {key}: {report}");
    }
    assert_eq!(report["sitesUpdated"], 1);
}

#[test]
fn example_without_guard_exits_3() {
    let dir = setup();
    fs::write(dir.path().join("bad.java"), "class E { void m(Vibrator v) { v.vibrate(VibrationEffect.createOneShot(5, 1)); } }\n").unwrap();
    let o = run(dir.path(), &["--generate-patch", DEP, UPD, "--input", "bad.java", "--output", "p.cocci"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("if/else"), "{}", stderr(&o));
    assert!(!dir.path().join("p.cocci").exists());
}

#[test]
fn truncated_patch_exits_3_with_line() {
    let dir = setup();
    generate(dir.path());
    let full = fs::read_to_string(dir.path().join("p.cocci")).unwrap();
    let cut: String = full.lines().take(6).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("cut.cocci"), cut).unwrap();
    let o = run(dir.path(), &["--apply-patch", DEP, UPD, "--input", "main.java", "--patch", "cut.cocci", "--output", "out.java"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
    assert!(!dir.path().join("out.java").exists());
}

#[test]
fn no_invocations_exits_1() {
    let dir = setup();
    generate(dir.path());
    fs::write(dir.path().join("none.java"), "class N { void m() { run(); } }\n").unwrap();
    let o = run(dir.path(), &["--apply-patch", DEP, UPD, "--input", "none.java", "--patch", "p.cocci", "--output", "out.java"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_to_string(dir.path().join("out.java")).unwrap(), "class N { void m() { run(); } }\n");
}

#[test]
fn missing_input_exits_2() {
    let dir = setup();
    let o = run(dir.path(), &["--generate-patch", DEP, UPD, "--input", "absent.java", "--output", "p.cocci"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mismatched_mapping_exits_3() {
    let dir = setup();
    generate(dir.path());
    let o = run(
        dir.path(),
        &["--apply-patch", "a.B#other(long)", "a.B#other2(long)", "--input", "main.java", "--patch", "p.cocci", "--output", "out.java"],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_64() {
    let dir = setup();
    assert_eq!(run(dir.path(), &["--generate-patch", DEP, "--input", "example.java", "--output", "p"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["--nope"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn corpus_run_prints_table_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let root = corpus();
    let o = run(dir.path(), &["--run-corpus", root.to_str().unwrap(), "--report", "c.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(table.contains("(100.0%)"), "{table}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(v["accuracy"], 1.0);
}
