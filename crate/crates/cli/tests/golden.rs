mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};

use common::{cases, check_case, golden_dir, mcat};

#[test]
fn transcripts_match() {
    let problems: Vec<String> = cases().iter().flat_map(check_case).collect();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn corpus_covers_the_exit_code_contract() {
    let cases = cases();
    let codes: BTreeSet<i32> = cases.iter().map(|c| c.exit).collect();
    assert_eq!(codes, BTreeSet::from([0, 1, 2]));
    let docs: BTreeSet<&String> = cases.iter().filter_map(|c| c.args.iter().find(|a| a.starts_with("docs/"))).collect();
    assert!(docs.len() >= 10, "only {} documents in the corpus", docs.len());
    let names: BTreeSet<&String> = cases.iter().map(|c| &c.name).collect();
    assert_eq!(names.len(), cases.len(), "case names must be unique");
}

#[test]
fn json_reports_are_deterministic() {
    for case in cases().iter().filter(|c| c.is_json()).take(6) {
        let a = mcat(&case.args, &case.env);
        let b = mcat(&case.args, &case.env);
        assert_eq!(a.stdout, b.stdout, "{}", case.name);
    }
}

#[test]
fn stdin_and_out_file() {
    let doc = std::fs::read(golden_dir().join("docs/two_blocks.json")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcat"))
        .args(["decompose-par", "-", "--morphism", "f", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&doc).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(golden_dir().join("expected/two_blocks_search.out")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);

    let dir = std::env::temp_dir().join(format!("mcat-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args: Vec<String> = ["decompose-par", "docs/two_blocks.json", "--morphism", "f", "--format", "json", "--out"]
        .iter()
        .map(|s| s.to_string())
        .chain([path.to_string_lossy().into_owned()])
        .collect();
    let run = mcat(&args, &[]);
    assert_eq!(run.exit, 0);
    assert!(run.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), expected);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn timing_is_opt_in() {
    let args = |extra: &[&str]| -> Vec<String> {
        ["solve", "docs/coupled.json", "--morphism", "m", "--rhs", "3,1", "--format", "json"]
            .iter()
            .chain(extra)
            .map(|s| s.to_string())
            .collect()
    };
    assert!(!mcat(&args(&[]), &[]).stdout.contains("timing_ms"));
    assert!(mcat(&args(&["--timing"]), &[]).stdout.contains("timing_ms"));
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(mcat(&["--help".to_string()], &[]).exit, 0);
    let run = mcat(&["frobnicate".to_string()], &[]);
    assert_eq!(run.exit, 2);
    assert!(run.stderr.contains("Usage"));
}
