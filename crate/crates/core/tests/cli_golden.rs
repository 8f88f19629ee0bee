//! Runs the `csai` binary on every case in `tests/golden/cases.txt` and
//! compares stdout and the exit code with the stored files. Set
//! `CSAI_BLESS=1` to rewrite the expected files instead.

use std::path::{Path, PathBuf};
use std::process::Command;

struct Case {
    name: String,
    input: String,
    args: Vec<String>,
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace().map(String::from);
            Case {
                name: parts.next().unwrap(),
                input: parts.next().unwrap(),
                args: parts.collect(),
            }
        })
        .collect()
}

fn run(case: &Case) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_csai"))
        .args(&case.args)
        .arg(golden_dir().join(format!("{}.json", case.input)))
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap())
}

#[test]
fn golden_files_match() {
    let bless = std::env::var_os("CSAI_BLESS").is_some();
    let dir = golden_dir();
    for case in cases() {
        let (stdout, code) = run(&case);
        let out_path = dir.join(format!("{}.stdout", case.name));
        let code_path = dir.join(format!("{}.code", case.name));
        if bless {
            std::fs::write(&out_path, &stdout).unwrap();
            std::fs::write(&code_path, format!("{code}\n")).unwrap();
            continue;
        }
        let want = std::fs::read(&out_path).unwrap();
        assert!(
            stdout == want,
            "{}: stdout differs\n{}",
            case.name,
            String::from_utf8_lossy(&stdout)
        );
        let want: i32 = std::fs::read_to_string(&code_path)
            .unwrap()
            .trim()
            .parse()
            .unwrap();
        assert_eq!(code, want, "{}: exit code", case.name);
    }
}

#[test]
fn stdin_matches_path() {
    use std::io::Write;
    use std::process::Stdio;
    let input = std::fs::read(golden_dir().join("psd_indefinite.json")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_csai"))
        .args(["psd", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        out.stdout,
        std::fs::read(golden_dir().join("psd_indefinite.stdout")).unwrap()
    );
}

#[test]
fn help_exits_cleanly() {
    let out = Command::new(env!("CARGO_BIN_EXE_csai"))
        .arg("--help")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("csa-check"));
}
