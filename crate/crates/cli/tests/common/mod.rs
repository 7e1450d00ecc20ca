use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub code: i32,
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            Case {
                name: parts[0].to_string(),
                args: parts[1].split_whitespace().map(String::from).collect(),
                code: parts[2].parse().unwrap(),
            }
        })
        .collect()
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_absorb")).args(args).current_dir(golden_dir()).output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn read_or_empty(p: PathBuf) -> String {
    std::fs::read_to_string(p).unwrap_or_default()
}

/// Differences between a run and the stored expectations.
pub fn compare(case: &Case, run: &Run) -> Vec<String> {
    let dir = golden_dir();
    let mut bad = Vec::new();
    if run.code != case.code {
        bad.push(format!("{}: exit {} (expected {})", case.name, run.code, case.code));
    }
    if run.stdout != read_or_empty(dir.join(format!("{}.out", case.name))) {
        bad.push(format!("{}: stdout differs from {0}.out", case.name));
    }
    if run.stderr != read_or_empty(dir.join(format!("{}.err", case.name))) {
        bad.push(format!("{}: stderr differs from {0}.err", case.name));
    }
    bad
}

#[allow(dead_code)]
pub fn store(case: &Case, run: &Run) {
    let dir = golden_dir();
    std::fs::write(dir.join(format!("{}.out", case.name)), &run.stdout).unwrap();
    let err = dir.join(format!("{}.err", case.name));
    if run.stderr.is_empty() {
        let _ = std::fs::remove_file(err);
    } else {
        std::fs::write(err, &run.stderr).unwrap();
    }
}
