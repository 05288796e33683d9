//! End-to-end tests of the command-line surface: subcommands, formats,
//! exit codes, and byte-level determinism of reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wlspectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("wlspectra-cli-{}-{name}", std::process::id()));
    path
}

#[test]
fn gen_named_writes_graph6() {
    let out = run(&["gen", "named", "--name", "k4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "C~\n");

    let out = run(&["gen", "named", "--name", "complete(2)"]);
    assert_eq!(stdout(&out), "A_\n");
}

#[test]
fn gen_named_rejects_unknown() {
    let out = run(&["gen", "named", "--name", "moebius"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn power_symmetric_square_of_triangle_is_triangle() {
    let out = run(&[
        "power",
        "--input",
        "named:complete(3)",
        "--k",
        "2",
        "--kind",
        "symmetric",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Bw\n");
}

#[test]
fn power_first_order_echoes_input() {
    let input = tmp("echo.g6");
    std::fs::write(&input, "Cl\n").unwrap();
    for kind in ["full", "restricted", "symmetric"] {
        let out = run(&[
            "power",
            "--input",
            input.to_str().unwrap(),
            "--k",
            "1",
            "--kind",
            kind,
        ]);
        assert_eq!(stdout(&out), "Cl\n", "kind {kind}");
    }
    std::fs::remove_file(&input).unwrap();
}

#[test]
fn power_respects_budget() {
    let out = run(&[
        "power",
        "--input",
        "named:petersen",
        "--k",
        "3",
        "--kind",
        "full",
        "--budget-vertices",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn edge_list_input_is_detected() {
    let input = tmp("star.el");
    std::fs::write(&input, "5 4\n0 1\n0 2\n0 3\n0 4\n").unwrap();
    let out = run(&[
        "cospectral",
        "--left",
        input.to_str().unwrap(),
        "--right",
        "named:star(4)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"cospectral\": true"), "{text}");
    std::fs::remove_file(&input).unwrap();
}

#[test]
fn power_writes_edge_list_output() {
    let out = run(&[
        "power",
        "--input",
        "named:complete(3)",
        "--k",
        "2",
        "--kind",
        "restricted",
        "--out-format",
        "edgelist",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("6 6\n"), "{text}");
}

#[test]
fn wl_reports_the_srg_pair_unseparated() {
    let out = run(&[
        "wl",
        "--left",
        "named:shrikhande",
        "--right",
        "named:rook4x4",
        "--dim",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"distinguished\": false"), "{text}");

    let out = run(&[
        "wl",
        "--left",
        "named:star(4)",
        "--right",
        "named:shrikhande",
        "--dim",
        "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("\"distinguished\": true"), "{text}");
}

#[test]
fn wl_budget_exceeded_is_a_usage_error() {
    let out = run(&[
        "wl",
        "--left",
        "named:petersen",
        "--right",
        "named:petersen",
        "--dim",
        "3",
        "--budget-vertices",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_props_passes_and_exits_zero() {
    let out = run(&[
        "verify",
        "props",
        "--input",
        "named:cycle(4)",
        "--k",
        "2",
        "--max-r",
        "8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"pass\": true"), "{text}");
    assert!(text.contains("\"schema\": 1"));
}

#[test]
fn verify_thm1_hypothesis_not_met_still_exits_zero() {
    let out = run(&[
        "verify",
        "thm1",
        "--left",
        "named:star(4)",
        "--right",
        "named:cycle(5)",
        "--k",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("hypothesis_not_met"), "{text}");
}

#[test]
fn verify_entrywise_text_mode() {
    let out = run(&[
        "verify",
        "entrywise",
        "--left",
        "named:cycle(5)",
        "--right",
        "named:cycle(5)",
        "--k",
        "1",
        "--max-r",
        "4",
        "--out",
        "text",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("overall: PASS"), "{text}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "verify",
        "thm1",
        "--left",
        "named:shrikhande",
        "--right",
        "named:rook4x4",
        "--k",
        "1",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!stdout(&first).contains("timings"));
}

#[test]
fn gen_cfi_emits_pair_and_manifest() {
    let manifest = tmp("manifest.json");
    let out = run(&[
        "gen",
        "cfi",
        "--base",
        "named:k4",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "plain and twisted graph6 lines: {text}");
    assert_ne!(lines[0], lines[1]);

    let manifest_text = std::fs::read_to_string(&manifest).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&manifest_text).unwrap();
    assert_eq!(parsed["vertex_count"], 28);
    assert_eq!(parsed["twist_edge"], serde_json::json!([0, 1]));
    std::fs::remove_file(&manifest).unwrap();
}

#[test]
fn gen_random_is_seed_deterministic() {
    let a = run(&["gen", "random", "--n", "12", "--p", "0.4", "--seed", "7"]);
    let b = run(&["gen", "random", "--n", "12", "--p", "0.4", "--seed", "7"]);
    let c = run(&["gen", "random", "--n", "12", "--p", "0.4", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn output_files_are_written() {
    let path = tmp("out.g6");
    let out = run(&[
        "gen",
        "named",
        "--name",
        "petersen",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.ends_with('\n'));
    std::fs::remove_file(&path).unwrap();
}
