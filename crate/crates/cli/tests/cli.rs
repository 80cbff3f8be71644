//! End-to-end tests of the `braces` binary: exit codes, output shapes,
//! document round-trips, checkpoint files, and determinism across thread
//! counts.

use braces_cli::checkpoint::Checkpoint;
use braces_cli::document::BraceDocument;
use braces_core::catalog::entry_by_id;
use std::process::{Command, Output};

fn braces(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braces"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("not killed by a signal")
}

fn doc_for(id: &str) -> BraceDocument {
    let (e, b) = entry_by_id(id).expect("known id");
    BraceDocument::from_entry(&e, &b)
}

#[test]
fn catalog_row_counts_match_the_contract() {
    let o = braces(&["catalog", "--p", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 28, "header + 27 rows");

    let o = braces(&["catalog", "--p", "3", "--shape", "zp3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4, "header + 3 rows");

    let o = braces(&["catalog", "--p", "3", "--socle", "27", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4, "header + 3 trivial braces");

    let o = braces(&["catalog", "--p", "4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn catalog_json_lists_all_entries() {
    let o = braces(&["catalog", "--p", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 37);
    assert!(rows.iter().any(|r| r["mult_group"] == "m(3)"));
}

#[test]
fn output_is_identical_across_job_counts() {
    for args in [
        vec!["catalog", "--p", "3", "--format", "json"],
        vec!["classify", "--p", "2"],
        vec!["verify", "--entry", "p3.zp_p_p.soc1.family1(p=2)"],
    ] {
        let one = braces(&[args.clone(), vec!["--jobs", "1"]].concat());
        let four = braces(&[args.clone(), vec!["--jobs", "4"]].concat());
        assert_eq!(code(&one), 0, "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn jobs_can_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_braces"))
        .args(["catalog", "--p", "2", "--format", "csv"])
        .env("BRACES_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 28);
}

#[test]
fn verify_exit_codes_follow_the_contract() {
    let o = braces(&["verify", "--entry", "p3.zp3.socp2.family1(p=2,α=1)"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("all axioms hold"));
    assert!(text.contains("multiplicative group: q"));
    assert!(text.trim_end().ends_with("ok"));

    let o = braces(&["verify", "--entry", "no.such.entry"]);
    assert_eq!(code(&o), 2);

    let o = braces(&["verify", "--input", "/nonexistent/brace.json"]);
    assert_eq!(code(&o), 2);

    let o = braces(&["verify"]);
    assert_eq!(code(&o), 2, "clap enforces a target");
}

#[test]
fn documents_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for id in [
        "p.zp.socp.trivial(p=3)",
        "p2.zp_p.socp.family1(p=2)",
        "p3.zp3.socp2.family1(p=2,α=3)",
        "p3.zp_p2.socp.family6(p=3,a=2,ε=2)",
        "p3.zp_p_p.socp.family4(p=3,c=1)",
    ] {
        let path = dir.path().join("doc.json");
        std::fs::write(&path, serde_json::to_string(&doc_for(id)).unwrap()).unwrap();
        let o = braces(&["verify", "--input", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{id}: {}", stderr(&o));
        assert!(stdout(&o).trim_end().ends_with("ok"), "{id}");
    }
}

#[test]
fn corrupted_documents_are_flagged_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = doc_for("p3.zp_p2.socp.family2(p=2)");
    let old = doc.table[1][2];
    doc.table[1][2] = (old + 1) % 8;
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = braces(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not a left brace"));
    assert!(stderr(&o).contains("bijection"), "witness on stderr");
}

#[test]
fn annotation_mismatches_respect_leniency() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = doc_for("p2.zp2.socp.family1(p=3)");
    doc.socle_order = Some(9);
    let path = dir.path().join("claim.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let o = braces(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("annotation mismatch"));

    let o = braces(&["verify", "--input", path.to_str().unwrap(), "--lenient"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn enumerate_z2xz4_finds_fourteen_classes() {
    let o = braces(&["enumerate", "--shape", "z2xz4", "--up-to-iso"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("classes: 14"), "{text}");
    assert!(text.contains("complete: true"));
}

#[test]
fn enumerate_budget_exits_three_and_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.ck");
    let o = braces(&[
        "enumerate",
        "--shape",
        "z2xz4",
        "--up-to-iso",
        "--budget",
        "2",
        "--checkpoint",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("budget"));
    let cp = Checkpoint::load(&path).unwrap().unwrap();
    assert_eq!(cp.shape, "z2xz4");
    assert!(!cp.complete);
}

#[test]
fn elementary_cube_enumeration_requires_deep() {
    let o = braces(&["enumerate", "--shape", "z3xz3xz3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--deep"));
}

#[test]
fn ybe_exports_the_flip_for_the_trivial_brace() {
    let o = braces(&["ybe", "--entry", "p3.zp3.socp3.trivial(p=2)"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 64);
    for line in text.lines() {
        let v: Vec<&str> = line.split(' ').collect();
        assert_eq!((v[0], v[1]), (v[3], v[2]));
    }

    let o = braces(&["ybe", "--entry", "p3.zp_p_p.socp.family3(p=2)", "--check"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("# yang-baxter:"));
    assert_eq!(text.lines().count(), 65);

    let o = braces(&["ybe", "--entry", "nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn classify_prints_singletons() {
    let o = braces(&["classify", "--p", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("27 entries fall into 27 classes"));
    assert!(text.contains("all classes are singletons"));

    let o = braces(&["classify", "--p", "7"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn selftest_at_p_two_passes_every_criterion() {
    let o = braces(&["selftest", "--p", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("criterion "))
        .collect();
    assert_eq!(lines.len(), 11);
    for line in lines {
        assert!(line.contains(": PASS"), "{line}");
    }
    assert!(text.contains("selftest: 11/11 criteria passed"));
}
