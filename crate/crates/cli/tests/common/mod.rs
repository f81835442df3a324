#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const UPDATE_ENV: &str = "UPDATE_GOLDEN";

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(name)
}

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub exit: i32,
    pub env: Vec<(String, String)>,
    pub args: Vec<String>,
}

impl Case {
    /// Exit-2 cases keep stderr, the rest stdout.
    pub fn expected_path(&self) -> PathBuf {
        let ext = if self.exit == 2 { "err" } else { "out" };
        golden_dir().join("expected").join(format!("{}.{ext}", self.name))
    }

    pub fn is_json(&self) -> bool {
        self.args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
    }
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut words = line.split_whitespace();
            let name = words.next().unwrap().to_string();
            let exit = words.next().unwrap().parse().expect("exit code");
            let mut env = Vec::new();
            let mut args = Vec::new();
            for w in words {
                match w.strip_prefix("env:").and_then(|kv| kv.split_once('=')) {
                    Some((k, v)) => env.push((k.to_string(), v.to_string())),
                    None => args.push(w.to_string()),
                }
            }
            Case { name, exit, env, args }
        })
        .collect()
}

pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn mcat(args: &[String], env: &[(String, String)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mcat"));
    cmd.current_dir(golden_dir()).args(args).env_remove("MCAT_TOLERANCE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("mcat runs");
    Run {
        exit: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run_case(case: &Case) -> Run {
    mcat(&case.args, &case.env)
}

/// Checks one case against its transcript, or rewrites the transcript
/// when `UPDATE_GOLDEN` is set. Returns a description of each mismatch.
pub fn check_case(case: &Case) -> Vec<String> {
    let run = run_case(case);
    let mut problems = Vec::new();
    if run.exit != case.exit {
        problems.push(format!("{}: exit {} (expected {}); stderr: {}", case.name, run.exit, case.exit, run.stderr.trim()));
    }
    let actual = if case.exit == 2 { &run.stderr } else { &run.stdout };
    if case.exit == 2 && !run.stdout.is_empty() {
        problems.push(format!("{}: usage errors must not write to stdout", case.name));
    }
    let path = case.expected_path();
    if std::env::var_os(UPDATE_ENV).is_some() {
        std::fs::write(&path, actual).expect("write transcript");
        return problems;
    }
    match std::fs::read_to_string(&path) {
        Ok(expected) if expected == *actual => {}
        Ok(_) => problems.push(format!("{}: output differs from {}", case.name, path.display())),
        Err(_) => problems.push(format!("{}: missing transcript {}", case.name, path.display())),
    }
    problems
}
