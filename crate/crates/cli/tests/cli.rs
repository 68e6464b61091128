//! End-to-end tests that run the built `multibeta` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multibeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_multibeta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary finishes")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn validates_an_admissible_pair() {
    let out = run(&["validate-bases", "--bases", "2,3/2"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["admissible"], Value::Bool(true));
    assert_eq!(report["frontier"]["greedy_max"], "4/3");
    assert_eq!(report["frontier"]["lazy_max"], "1/2");
    assert_eq!(report["violation"], Value::Null);
}

#[test]
fn reports_the_failing_inequality() {
    let out = run(&["validate-bases", "--bases", "2,5"]);
    assert_eq!(code(&out), 2);
    let report = json(&out);
    assert_eq!(report["admissible"], Value::Bool(false));
    assert_eq!(report["violation"]["k"], 0);
    assert_eq!(report["violation"]["inequality"], "lower[1] <= upper[0] fails");
}

#[test]
fn accepts_the_constant_pair() {
    let out = run(&["validate-bases", "--bases", "2,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["admissible"], Value::Bool(true));
}

#[test]
fn rejects_unparseable_bases_as_usage_error() {
    let out = run(&["validate-bases", "--bases", "abc"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["expand", "--x", "1"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn expands_one_to_the_alternating_cycle() {
    let out = run(&["expand", "--bases", "2,3/2", "--x", "1", "--mode", "greedy"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["expansion"]["status"], "periodic");
    assert_eq!(report["expansion"]["word"], "(10)");
    assert_eq!(report["expansion"]["approximate"], Value::Bool(false));
    assert_eq!(report["residual_bound"], "0");
}

#[test]
fn expands_zero_to_the_zero_cycle() {
    let out = run(&["expand", "--bases", "2,3/2", "--x", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["expansion"]["word"], "(0)");
}

#[test]
fn a_single_base_gets_the_classical_alphabet() {
    let out = run(&["expand", "--bases", "2", "--x", "1/2", "--mode", "lazy"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["bases"], serde_json::json!(["2", "2"]));
    assert_eq!(report["expansion"]["word"], "0(1)");

    let out = run(&["validate-bases", "--bases", "5/2"]);
    assert_eq!(json(&out)["bases"], serde_json::json!(["5/2", "5/2", "5/2"]));
}

#[test]
fn rejects_points_outside_the_domain() {
    let out = run(&["expand", "--bases", "2,3/2", "--x", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn truncated_expansions_carry_a_residual_bound() {
    // 1/5 over (3/2, 3/2): the greedy orbit of a denominator-5 rational
    // never revisits a state within 10 steps, so the result truncates.
    let out = run(&[
        "expand", "--bases", "3/2,3/2", "--x", "1/5", "--depth", "10",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["expansion"]["status"], "truncated");
    assert_eq!(report["expansion"]["depth"], 10);
    let bound = report["residual_bound"].as_str().expect("exact bound");
    // U = 2 and ten factors of 3/2: 2·(2/3)^10 = 2048/59049.
    assert_eq!(bound, "2048/59049");
}

#[test]
fn evaluates_word_goldens() {
    for (bases, word, value) in [
        ("2,3/2", "(10)", "1"),
        ("2", "(1)", "1"),
        ("2", "101", "5/8"),
    ] {
        let out = run(&[
            "project", "--bases", bases, "--word", word, "--output", "plain",
        ]);
        assert_eq!(code(&out), 0, "project {word} over {bases}");
        assert_eq!(stdout(&out), format!("{value}\n"));
    }
}

#[test]
fn classifies_a_binary_word() {
    let out = run(&["classify", "--bases", "2,2", "--word", "11(0)"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["word"], "11(0)");
    assert_eq!(report["value"], "3/4");
    assert_eq!(report["is_greedy"]["status"], "satisfied");
    assert_eq!(report["is_quasi_greedy"]["status"], "violated");
    assert_eq!(report["is_quasi_greedy"]["witness"], 3);
    assert_eq!(report["frontier"]["greedy_necessary"]["status"], "satisfied");
    assert_eq!(report["two_base"]["greedy"]["status"], "satisfied");
}

#[test]
fn the_zero_word_is_out_of_scope_for_quasi_greedy() {
    let out = run(&["classify", "--bases", "2,2", "--word", "(0)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["is_quasi_greedy"]["status"], "inapplicable");
}

#[test]
fn wider_alphabets_have_no_two_base_verdicts() {
    let out = run(&["classify", "--bases", "3,3,3", "--word", "(012)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["two_base"], Value::Null);
}

#[test]
fn classifies_batches_from_stdin() {
    let out = run_with_stdin(&["classify", "--bases", "2,2"], "11(0)\n\n101\n");
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    assert_eq!(lines.len(), 2, "one report per non-empty input line");
    let first: Value = serde_json::from_str(lines[0]).expect("first line is JSON");
    let second: Value = serde_json::from_str(lines[1]).expect("second line is JSON");
    assert_eq!(first["word"], "11(0)");
    // Finite words classify as their zero-extension.
    assert_eq!(second["word"], "101(0)");
    assert_eq!(second["value"], "5/8");
}

#[test]
fn enumerates_the_half_point() {
    let out = run(&["enumerate", "--bases", "2", "--x", "1/2", "--depth", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "{\"x\":\"1/2\",\"depth\":3,\"count\":2,\"leaves\":[\"011\",\"100\"]}\n"
    );
}

#[test]
fn writes_plot_files() {
    let path = std::env::temp_dir().join(format!("multibeta-plot-{}.json", std::process::id()));
    let out = run(&[
        "plot",
        "--bases",
        "2,3/2",
        "--samples",
        "4",
        "--out",
        path.to_str().expect("temp path is UTF-8"),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty(), "file output leaves stdout empty");
    let series: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("plot file exists"))
            .expect("plot file is JSON");
    std::fs::remove_file(&path).ok();
    assert_eq!(series["branches"].as_array().expect("branches").len(), 2);
    assert_eq!(series["diagonal"], Value::Bool(true));
    assert_eq!(series["branches"][0]["samples"].as_array().unwrap().len(), 4);
}

#[test]
fn identical_runs_emit_identical_bytes() {
    let args = ["classify", "--bases", "2,3/2", "--word", "1(10)"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn unknown_policies_are_usage_errors() {
    let out = run(&["expand", "--bases", "2,2", "--x", "1/2", "--mode", "sloppy"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn float_mode_round_trips() {
    let out = run(&["validate-bases", "--bases", "2,3/2", "--arith", "float"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["admissible"], Value::Bool(true));
    assert_eq!(report["frontier"]["lazy_max"], 0.5);
}
