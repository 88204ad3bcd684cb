//! End-to-end runs of the `fpp` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpp"))
        .args(args)
        .env_remove("FPP_PRIME")
        .env_remove("FPP_ROOT")
        .env_remove("FPP_FORMAT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_passes_at_default_prime() {
    let o = fpp(&["verify", "--prime", "263"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("verdict: PASS\n"));
}

#[test]
fn bad_primes_are_usage_errors() {
    let o = fpp(&["verify", "--prime", "13"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("-7 is not a quadratic residue mod 13"));
    let o = fpp(&["verify", "--prime", "7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("ramified"));
    let o = fpp(&["verify", "--prime", "263", "--root", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn clap_errors_map_to_usage() {
    assert_eq!(fpp(&["verify", "--bogus"]).status.code(), Some(3));
    assert_eq!(fpp(&["hilbert"]).status.code(), Some(3));
    assert_eq!(fpp(&["--help"]).status.code(), Some(0));
    assert_eq!(fpp(&["verify", "--max-degree", "2"]).status.code(), Some(3));
}

#[test]
fn print_import_round_trip() {
    let printed = fpp(&["corpus", "print"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_fpp"))
        .args(["corpus", "import"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&printed.stdout).unwrap();
    let imported = child.wait_with_output().unwrap();
    let fingerprint = fpp(&["corpus", "fingerprint"]);
    assert_eq!(imported.status.code(), Some(0));
    assert_eq!(stdout(&imported), stdout(&fingerprint));
    assert_eq!(stdout(&fingerprint), stdout(&fpp(&["corpus", "fingerprint"])));
}

#[test]
fn exported_corpus_gives_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.fpp");
    let file = file.to_str().unwrap();
    assert_eq!(fpp(&["corpus", "export", "--file", file]).status.code(), Some(0));
    let a = fpp(&["verify", "--format", "structured"]);
    let b = fpp(&["verify", "--format", "structured", "--corpus", file]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_go_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = fpp(&["hilbert", "--degree", "4", "--format", "structured", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["quotient"], 253);
}

#[test]
fn calibrate_commands() {
    let o = fpp(&["calibrate", "--eq", "19"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("resolved; passing set [\"-1/2 - 1/2*t\"]"));
    let o = fpp(&["calibrate", "--eq", "19", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inconclusive"));
    let o = fpp(&["calibrate", "--eq", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = fpp(&["calibrate", "--eq", "19", "--term", "U1*U7^2", "--candidates", "-1-t", "(-1-t)/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fpp(&["calibrate", "--eq", "99"]).status.code(), Some(3));
}

#[test]
fn environment_fallback_and_precedence() {
    let run = |env: &[(&str, &str)], args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpp"));
        cmd.args(args);
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    };
    assert_eq!(run(&[("FPP_PRIME", "13")], &["hilbert", "--degree", "3"]).status.code(), Some(3));
    let o = run(&[("FPP_PRIME", "13")], &["hilbert", "--degree", "3", "--prime", "23"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[("FPP_FORMAT", "structured")], &["smooth"]);
    assert!(stdout(&o).trim_start().starts_with('{'));
}

#[test]
fn subcommands() {
    let o = fpp(&["betti", "--step", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti step 2 degree 4: 378"));
    assert_eq!(fpp(&["betti", "--step", "5"]).status.code(), Some(3));
    let o = fpp(&["smooth"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("control (1,0,0,0,0,0,0,0,0,0): on surface false"));
    let o = fpp(&["invariance"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g7^2"));
    assert_eq!(fpp(&["hilbert", "--degree", "1"]).status.code(), Some(0));
}

#[test]
fn failing_corpus_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.fpp");
    let text = String::from_utf8(fpp(&["corpus", "print"]).stdout).unwrap();
    // eq 2 becomes a multiple of eq 3, so the cubic rank drops to 83.
    let eq3 = text.lines().find_map(|l| l.strip_prefix("eq 3 : ")).unwrap();
    let bad: String = text
        .lines()
        .map(|l| if l.starts_with("eq 2 : ") { format!("eq 2 : 2*({eq3})\n") } else { format!("{l}\n") })
        .collect();
    std::fs::write(&file, bad).unwrap();
    let o = fpp(&["hilbert", "--degree", "3", "--corpus", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = fpp(&["verify", "--corpus", "/nonexistent/corpus.fpp"]);
    assert_eq!(o.status.code(), Some(3));
}
