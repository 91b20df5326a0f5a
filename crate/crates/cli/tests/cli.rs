use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn solve2_finds_exact_witness() {
    let out = run(&["solve2", &path("positive-15.pres"), "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["verdict"]["kind"], "EXACT_S");
    assert_eq!(report["verdict"]["witness"]["degree"], 15);
    assert!(report.get("generated_at_unix").is_none());
}

#[test]
fn check_exhausts_degree_18_words() {
    let out = run(&["check", &path("one-relator-18.pres"), "--deterministic"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["verdict"]["kind"], "NOT_FOUND_BUDGET");
    assert_eq!(report["verdict"]["exhausted"], true);
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = [
        "recognize",
        &path("one-relator-18.pres"),
        "--deterministic",
        "--pair-budget",
        "0",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["verdict"]["kind"], "S_VIA_REDUCTION");
}

#[test]
fn parallel_deterministic_matches_serial() {
    let serial = run(&["check", &path("positive-15.pres"), "--deterministic"]);
    let parallel = run(&[
        "check",
        &path("positive-15.pres"),
        "--deterministic",
        "--jobs",
        "4",
    ]);
    assert_eq!(
        json(&serial)["verdict"]["witness"],
        json(&parallel)["verdict"]["witness"]
    );
}

#[test]
fn reads_standard_input() {
    let out = run_stdin(
        &["check", "-", "--deterministic"],
        "gens: a b\nrel: a b a^-1 b^-1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degrees"]["reduced"], 4);
}

#[test]
fn reads_file_written_at_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.pres");
    std::fs::write(&file, "# cyclic of order three\ngens: x\nrel: x x x\n").unwrap();
    let out = run(&["genus", file.to_str().unwrap(), "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["genus_upper_bound"]["genus"], 0);
}

#[test]
fn wgraph_dot_lists_weighted_edges() {
    let out = run(&["wgraph", &path("heisenberg.pres"), "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph whitehead {"));
    let total: u64 = text
        .lines()
        .filter_map(|l| l.split("weight=").nth(1))
        .map(|w| w.split(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 13);
}

#[test]
fn enumerate_respects_limit() {
    let out = run(&[
        "enumerate",
        &path("positive-15.pres"),
        "--limit",
        "1",
        "--deterministic",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let summary: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(summary["witnesses"], 1);
}

#[test]
fn reduce_lowers_degree() {
    let out = run(&["reduce", &path("one-relator-18.pres")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["result"]["degree"].as_u64().unwrap() < 18);
    assert!(!report["path"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes_for_bad_usage() {
    assert_eq!(run(&["check", "--no-such-flag"]).status.code(), Some(3));
    assert_eq!(
        run(&["check", "--jobs", "0", &path("heisenberg.pres")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["solve2", &path("heisenberg.pres")]).status.code(),
        Some(5)
    );
    assert_eq!(
        run(&["check", "/nonexistent/file.pres"]).status.code(),
        Some(4)
    );
    assert_eq!(
        run_stdin(&["check"], "gens: x\nrel: y\n").status.code(),
        Some(4)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn tight_budget_is_inconclusive() {
    let out = run_stdin(&["check", "--max-diagrams", "0"], "gens: x\nrel: x x x\n");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["statistics"]["budget_stopped"], true);
}
