//! End-to-end tests for the command line: exit codes, report shapes, golden
//! verify output, determinism, and emitted-file round-trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperprime"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fix_a() -> PathBuf {
    fixtures().join("fix_a.hyp")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn check_golden(name: &str, content: &str) {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
        std::fs::write(&golden, content).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&golden)
        .unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
    assert_eq!(content, expected, "{name} drifted");
}

#[test]
fn verify_passes_on_the_example_and_matches_golden() {
    let out = run(&["verify", fix_a().to_str().unwrap()]);
    assert!(out.status.success());
    check_golden("fix_a_verify.txt", &stdout_of(&out));
}

#[test]
fn verify_golden_for_the_klein_module() {
    let out = run(&["verify", fixtures().join("fix_b.hyp").to_str().unwrap()]);
    assert!(out.status.success());
    check_golden("fix_b_verify.txt", &stdout_of(&out));
}

#[test]
fn classify_reports_the_example_verdict() {
    let out = run(&[
        "classify",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,2",
        "--kind",
        "classical",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "classical-prime: true");
}

#[test]
fn improper_subhypermodule_is_a_usage_error() {
    let out = run(&[
        "classify",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,1,2,3",
        "--kind",
        "classical",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("subhypermodule must be proper"));
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hyp");
    std::fs::write(&bad, "ring R arity 3 3\nelements 0 1\nzero 0\none 1\nf 0 0 0 = \n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty hyperproduct"));
}

#[test]
fn subs_lists_the_lattice_with_markers() {
    let out = run(&[
        "subs",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("{0,2}"));
    assert!(text.contains("{0,1,2} (maximal)"));
    assert!(text.contains("{0,1,2,3} (improper)"));
    let ideals = run(&["subs", fix_a().to_str().unwrap(), "--module", "M", "--ideals"]);
    assert_eq!(stdout_of(&ideals), "{0}\n{0,2}\n{0,1,2}\n");
}

#[test]
fn colon_prints_scalar_sets_with_labels() {
    let out = run(&[
        "colon",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,2",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out).trim(),
        "S_N = {0,1,2} (role: Hyperideal)"
    );
    let out = run(&[
        "colon",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0",
        "--elem",
        "1",
    ]);
    assert_eq!(stdout_of(&out).trim(), "N_a = {0} (role: Hyperideal)");
}

#[test]
fn zeros_reports_none_for_the_example_prime() {
    let out = run(&[
        "zeros",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "no classical zeros");
}

#[test]
fn quotient_emits_a_reparsable_file() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("quot.hyp");
    let out = run(&[
        "quotient",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,2",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("3 cosets"));
    let verify = run(&["verify", emitted.to_str().unwrap()]);
    assert!(verify.status.success());
}

#[test]
fn product_emits_a_reparsable_file() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("prod.hyp");
    let out = run(&[
        "product",
        fixtures().join("fix_b.hyp").to_str().unwrap(),
        "--modules",
        "H,H",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let verify = run(&["verify", emitted.to_str().unwrap()]);
    assert!(verify.status.success());
}

#[test]
fn hom_checks_maps_between_modules() {
    let out = run(&[
        "hom",
        fixtures().join("fix_b.hyp").to_str().unwrap(),
        "--from",
        "H",
        "--to",
        "H",
        "--map",
        "0:0,x:x,y:y,z:z",
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("kernel {0}"));
    let bad = run(&[
        "hom",
        fixtures().join("fix_b.hyp").to_str().unwrap(),
        "--from",
        "H",
        "--to",
        "H",
        "--map",
        "0:x,x:0,y:y,z:z",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn harness_runs_one_file_quickly_and_exits_clean() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("z2.hyp"), dir.path().join("z2.hyp")).unwrap();
    let out = run(&["harness", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("summary:"));
    // JSON shape: array of {theorem, structure, status, witness?}
    let json_out = run(&["--json", "harness", dir.path().to_str().unwrap()]);
    assert!(json_out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&json_out)).unwrap();
    let first = &parsed.as_array().unwrap()[0];
    assert!(first.get("theorem").is_some());
    assert!(first.get("structure").is_some());
    assert!(first.get("status").is_some());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "classify",
        fix_a().to_str().unwrap(),
        "--module",
        "M",
        "--sub",
        "0,2",
        "--kind",
        "phi",
        "--phi",
        "ideal",
        "--witness",
        "--deterministic",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

fn _unused(_: &Path) {}
