//! Runs every `tests/golden/*.etcs` script through the binary in both formats
//! and compares stdout, stderr and exit code with the stored files.
//! `UPDATE_GOLDEN=1 cargo test -p etcs-cli --test golden` rewrites them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn etcs(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_etcs")).current_dir(dir).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().expect("exited normally"),
    }
}

fn scripts() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".etcs"))
        .collect();
    names.sort();
    names
}

#[test]
fn golden_outputs() {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let names = scripts();
    assert!(names.len() >= 10);
    let mut mismatches = Vec::new();
    for name in &names {
        let stem = name.trim_end_matches(".etcs");
        let text = etcs(&dir, &[name]);
        let json = etcs(&dir, &["--format", "json", name]);
        assert_eq!(text.code, json.code, "{name}: exit code depends on format");
        assert_eq!(text.stderr, json.stderr, "{name}: diagnostics depend on format");
        let expected = [
            (format!("{stem}.txt"), text.stdout),
            (format!("{stem}.json"), json.stdout),
            (format!("{stem}.err"), text.stderr),
            (format!("{stem}.code"), format!("{}\n", text.code)),
        ];
        for (file, actual) in expected {
            let path = dir.join(&file);
            if update {
                fs::write(&path, &actual).unwrap();
            } else {
                let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {file}; run with UPDATE_GOLDEN=1"));
                if want != actual {
                    mismatches.push(format!("{file}:\n--- expected\n{want}--- actual\n{actual}"));
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn runs_are_byte_identical() {
    let dir = golden_dir();
    for name in scripts() {
        for format in ["text", "json"] {
            let a = etcs(&dir, &["--format", format, &name]);
            let b = etcs(&dir, &["--format", format, &name]);
            assert_eq!(a.stdout, b.stdout, "{name} ({format})");
            assert_eq!(a.stderr, b.stderr, "{name} ({format})");
            assert_eq!(a.code, b.code, "{name} ({format})");
        }
    }
}

#[test]
fn suite_is_deterministic_with_a_seed() {
    let dir = golden_dir();
    let args = ["--check-axioms", "--size", "4", "--seed", "7", "--format", "json"];
    let a = etcs(&dir, &args);
    let b = etcs(&dir, &args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("sampled up to size 4 (seed 7)"));
}

#[test]
fn stdin_diagnostics_use_a_placeholder_origin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_etcs"))
        .arg("-")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"set X = {a}\nfn f : X -> X = {a |-> z}\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("<stdin>:2:24: error: value not in codomain"), "{err}");
}

#[test]
fn missing_arguments_exit_two() {
    let r = etcs(&golden_dir(), &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    let r = etcs(&golden_dir(), &["no_such_file.etcs"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cannot read no_such_file.etcs"));
}
