//! Implementations of the `braces` subcommands.
//!
//! Every command takes plain arguments plus an output writer and returns a
//! [`CmdResult`]; the binary maps the error variants onto its exit-code
//! contract (0 success, 1 mathematical violation, 2 usage or I/O error,
//! 3 resource bound hit with partial results saved). Keeping the logic out
//! of `main` lets the integration tests drive commands in-process and keeps
//! stdout content independent of the thread count.

use crate::checkpoint::{Checkpoint, CheckpointMode};
use crate::document::BraceDocument;
use crate::selftest;
use braces_core::abelian::AbelianGroup;
use braces_core::brace::{mult_group_name, socle, verify_brace, Brace};
use braces_core::catalog::{catalog_p3, entry_by_id, CatalogEntry, DEFAULT_PRIME_BOUND};
use braces_core::classify::{classify_catalog, enumerate_braces, EnumerateOptions};
use braces_core::modint::is_prime;
use braces_core::ybe::{solution_from_brace, verify_yang_baxter};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

/// Command failure, tagged with the exit code it maps to.
#[derive(Debug, Error)]
pub enum CmdError {
    /// A mathematical claim failed to verify (exit 1).
    #[error("{0}")]
    Violation(String),
    /// Bad arguments or I/O trouble (exit 2).
    #[error("{0}")]
    Usage(String),
    /// A budget interrupted the run; partial results were reported (exit 3).
    #[error("{0}")]
    ResourceBound(String),
}

impl CmdError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Violation(_) => 1,
            CmdError::Usage(_) => 2,
            CmdError::ResourceBound(_) => 3,
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> CmdError {
        CmdError::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> CmdError {
        CmdError::Usage(format!("json error: {e}"))
    }
}

pub type CmdResult = Result<(), CmdError>;

/// Output layout for `braces catalog`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Json,
    Csv,
}

/// What `braces verify` should verify.
#[derive(Debug, Clone)]
pub enum VerifyTarget {
    /// A catalog entry id.
    Entry(String),
    /// A JSON document file.
    Input(std::path::PathBuf),
}

fn require_prime(p: u64, max: u64) -> Result<(), CmdError> {
    if !is_prime(p) || p > max {
        return Err(CmdError::Usage(format!(
            "p must be a prime at most {max}, got {p}"
        )));
    }
    Ok(())
}

/// Parse a concrete shape token such as `z8` or `z2xz4` into its group.
pub fn parse_shape(token: &str) -> Result<AbelianGroup, CmdError> {
    let bad = || CmdError::Usage(format!("unrecognized shape token `{token}`"));
    let moduli: Vec<u64> = token
        .split('x')
        .map(|part| {
            part.strip_prefix('z')
                .and_then(|digits| digits.parse().ok())
                .ok_or_else(bad)
        })
        .collect::<Result<_, _>>()?;
    let p = [2u64, 3, 5, 7]
        .into_iter()
        .find(|q| moduli.first().is_some_and(|m| m % q == 0))
        .ok_or_else(bad)?;
    AbelianGroup::new(p, &moduli).map_err(|e| CmdError::Usage(e.to_string()))
}

/// Generic shape token of a carrier, as used in entry ids: `zp`, `zp2`,
/// `zp3`, `zp_p`, `zp_p2`, `zp_p_p`.
pub fn generic_token(g: &AbelianGroup) -> &'static str {
    let p = g.p();
    match g.moduli() {
        [m] if *m == p => "zp",
        [m] if *m == p * p => "zp2",
        [m] if *m == p * p * p => "zp3",
        [_, n] if *n == p => "zp_p",
        [_, n] if *n == p * p => "zp_p2",
        [_, _, _] => "zp_p_p",
        _ => "z1",
    }
}

const GENERIC_TOKENS: [&str; 6] = ["zp", "zp2", "zp3", "zp_p", "zp_p2", "zp_p_p"];

fn params_display(e: &CatalogEntry) -> String {
    if e.params().is_empty() {
        return "-".to_string();
    }
    e.params()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct CatalogRow {
    id: String,
    shape: String,
    socle_order: u64,
    params: BTreeMap<String, u64>,
    mult_group: String,
}

/// List the order-p³ catalog, optionally filtered by shape token (generic or
/// concrete) and socle order. Rows come out in catalog order.
pub fn cmd_catalog(
    p: u64,
    shape: Option<&str>,
    socle_filter: Option<u64>,
    format: OutputFormat,
    out: &mut impl Write,
) -> CmdResult {
    require_prime(p, DEFAULT_PRIME_BOUND)?;
    if let Some(s) = shape {
        if !GENERIC_TOKENS.contains(&s) {
            parse_shape(s)?;
        }
    }
    let rows: Vec<(CatalogEntry, Brace)> = catalog_p3(p)
        .into_iter()
        .filter(|(e, _)| {
            shape.map_or(true, |s| {
                e.group().token() == s || generic_token(e.group()) == s
            }) && socle_filter.map_or(true, |n| e.socle_order() == n)
        })
        .collect();
    match format {
        OutputFormat::Json => {
            let body: Vec<CatalogRow> = rows
                .iter()
                .map(|(e, _)| CatalogRow {
                    id: e.id().to_string(),
                    shape: e.group().token(),
                    socle_order: e.socle_order(),
                    params: e.params().iter().cloned().collect(),
                    mult_group: e.claimed_mult_group().to_string(),
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "id,shape,socle_order,params,mult_group")?;
            for (e, _) in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    e.id(),
                    e.group().token(),
                    e.socle_order(),
                    params_display(e),
                    e.claimed_mult_group()
                )?;
            }
        }
        OutputFormat::Pretty => {
            let mut cells: Vec<[String; 5]> = vec![[
                "id".to_string(),
                "shape".to_string(),
                "socle".to_string(),
                "params".to_string(),
                "mult-group".to_string(),
            ]];
            for (e, _) in &rows {
                cells.push([
                    e.id().to_string(),
                    e.group().token(),
                    e.socle_order().to_string(),
                    params_display(e),
                    e.claimed_mult_group().to_string(),
                ]);
            }
            let width = |col: usize| {
                cells
                    .iter()
                    .map(|row| row[col].chars().count())
                    .max()
                    .unwrap_or(0)
            };
            let widths: Vec<usize> = (0..5).map(width).collect();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<width$}", width = w))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
            writeln!(out, "{} entries", rows.len())?;
        }
    }
    Ok(())
}

/// Re-verify one brace: the axioms, then the socle order and multiplicative
/// group against what the catalog entry or document claims.
pub fn cmd_verify(target: &VerifyTarget, lenient: bool, out: &mut impl Write) -> CmdResult {
    let (brace, label, claims) = match target {
        VerifyTarget::Entry(id) => {
            let (e, b) = entry_by_id(id)
                .ok_or_else(|| CmdError::Usage(format!("unknown entry id `{id}`")))?;
            let doc = BraceDocument::from_entry(&e, &b);
            (b, format!("entry {id}"), doc)
        }
        VerifyTarget::Input(path) => {
            let text = std::fs::read_to_string(path)?;
            let doc: BraceDocument = serde_json::from_str(&text)?;
            let b = doc.to_brace().map_err(|e| CmdError::Usage(e.to_string()))?;
            (b, format!("document {}", path.display()), doc)
        }
    };
    let report = verify_brace(&brace);
    writeln!(out, "{label}: {report}")?;
    if !report.ok() {
        let witness = report
            .first_violation()
            .map(|v| v.to_string())
            .unwrap_or_else(|| "axiom failure".to_string());
        return Err(CmdError::Violation(witness));
    }
    writeln!(out, "socle order: {}", socle(&brace).order())?;
    writeln!(out, "multiplicative group: {}", mult_group_name(&brace))?;
    let mismatches = claims.annotation_mismatches(&brace);
    for m in &mismatches {
        if lenient {
            eprintln!("warning: {m}");
        } else {
            writeln!(out, "annotation mismatch: {m}")?;
        }
    }
    if !mismatches.is_empty() && !lenient {
        return Err(CmdError::Violation(mismatches.join("; ")));
    }
    writeln!(out, "ok")?;
    Ok(())
}

/// Classify the order-p³ catalog up to isomorphism and print the classes.
pub fn cmd_classify(p: u64, out: &mut impl Write) -> CmdResult {
    require_prime(p, 5)?;
    let report = classify_catalog(p);
    let total: usize = report.classes.iter().map(|c| c.len()).sum();
    writeln!(
        out,
        "{} entries fall into {} classes",
        total,
        report.class_count()
    )?;
    for (k, class) in report.classes.iter().enumerate() {
        writeln!(
            out,
            "class {k}: {} (size {})",
            class.join(" ≅ "),
            class.len()
        )?;
    }
    if !report.all_singletons() {
        return Err(CmdError::Violation(
            "catalog entries are not pairwise non-isomorphic".to_string(),
        ));
    }
    writeln!(out, "all classes are singletons")?;
    Ok(())
}

/// Exhaustively enumerate braces on a shape, optionally up to isomorphism,
/// with an optional node budget and checkpoint file.
pub fn cmd_enumerate(
    shape: &str,
    up_to_iso: bool,
    checkpoint_path: Option<&Path>,
    budget: Option<u64>,
    deep: bool,
    out: &mut impl Write,
) -> CmdResult {
    let g = parse_shape(shape)?;
    if g.order() > 27 {
        return Err(CmdError::Usage(format!(
            "enumeration covers orders up to 27; {shape} has order {}",
            g.order()
        )));
    }
    if g.moduli() == [3, 3, 3] && !deep {
        return Err(CmdError::Usage(
            "full enumeration over z3xz3xz3 is a long run; pass --deep to opt in".to_string(),
        ));
    }
    let opts = EnumerateOptions {
        up_to_iso,
        node_budget: budget,
    };
    let outcome = enumerate_braces(&g, &opts);
    writeln!(out, "shape: {}", g.token())?;
    writeln!(out, "raw tables: {}", outcome.raw_count)?;
    if let Some(classes) = outcome.class_count {
        writeln!(out, "classes: {classes}")?;
    }
    writeln!(out, "nodes: {}", outcome.nodes)?;
    writeln!(out, "complete: {}", outcome.complete)?;
    if let Some(path) = checkpoint_path {
        let cp = Checkpoint {
            shape: g.token(),
            mode: if up_to_iso {
                CheckpointMode::Classes
            } else {
                CheckpointMode::Raw
            },
            complete: outcome.complete,
            tables: outcome.tables.clone(),
        };
        cp.save(path)?;
        writeln!(out, "checkpoint: {}", path.display())?;
    }
    if !outcome.complete {
        let hint = match checkpoint_path {
            Some(path) => format!("; checkpoint written to {}", path.display()),
            None => String::new(),
        };
        return Err(CmdError::ResourceBound(format!(
            "node budget exhausted after {} nodes{hint}",
            outcome.nodes
        )));
    }
    Ok(())
}

/// Export the Yang–Baxter solution of a catalog entry as quadruples
/// `a b s1 s2` by element index, optionally re-checking it first.
pub fn cmd_ybe(entry: &str, check: bool, out: &mut impl Write) -> CmdResult {
    let (_, b) =
        entry_by_id(entry).ok_or_else(|| CmdError::Usage(format!("unknown entry id `{entry}`")))?;
    let s = solution_from_brace(&b);
    if check {
        let report = verify_yang_baxter(&s);
        writeln!(out, "# yang-baxter: {report}")?;
        if !report.ok() {
            return Err(CmdError::Violation(report.to_string()));
        }
    }
    let n = s.order();
    for (k, (s1, s2)) in s.pairs().iter().enumerate() {
        writeln!(out, "{} {} {s1} {s2}", k / n, k % n)?;
    }
    Ok(())
}

/// Run the acceptance suite, one line per criterion.
pub fn cmd_selftest(max_p: u64, deep: bool, out: &mut impl Write) -> CmdResult {
    if ![2, 3, 5].contains(&max_p) {
        return Err(CmdError::Usage(format!(
            "selftest prime bound must be 2, 3 or 5, got {max_p}"
        )));
    }
    let results = selftest::run_suite(max_p, deep);
    for r in &results {
        writeln!(out, "{}", selftest::format_line(r))?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "selftest: {passed}/{} criteria passed", results.len())?;
    if passed < results.len() {
        let failed: Vec<String> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{:02} {}", r.index, r.name))
            .collect();
        return Err(CmdError::Violation(format!(
            "criteria failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run<F: FnOnce(&mut Vec<u8>) -> CmdResult>(f: F) -> (CmdResult, String) {
        let mut buf = Vec::new();
        let r = f(&mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn catalog_counts_match_the_contract() {
        let (r, text) = run(|out| cmd_catalog(2, None, None, OutputFormat::Csv, out));
        r.unwrap();
        assert_eq!(text.lines().count(), 28, "header + 27 rows");

        let (r, text) = run(|out| cmd_catalog(3, Some("zp3"), None, OutputFormat::Csv, out));
        r.unwrap();
        assert_eq!(text.lines().count(), 4, "header + 3 rows");

        let (r, text) = run(|out| cmd_catalog(3, None, Some(27), OutputFormat::Csv, out));
        r.unwrap();
        assert_eq!(text.lines().count(), 4, "header + 3 trivial-brace rows");

        let (r, text) = run(|out| cmd_catalog(3, Some("z3xz9"), None, OutputFormat::Csv, out));
        r.unwrap();
        assert_eq!(text.lines().count(), 23, "header + 22 rows");
    }

    #[test]
    fn catalog_rejects_bad_arguments() {
        let (r, _) = run(|out| cmd_catalog(4, None, None, OutputFormat::Pretty, out));
        assert!(matches!(r, Err(CmdError::Usage(_))));
        let (r, _) = run(|out| cmd_catalog(2, Some("blob"), None, OutputFormat::Pretty, out));
        assert!(matches!(r, Err(CmdError::Usage(_))));
    }

    #[test]
    fn catalog_json_parses_back() {
        let (r, text) = run(|out| cmd_catalog(2, None, None, OutputFormat::Json, out));
        r.unwrap();
        let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows.len(), 27);
        assert_eq!(rows[0]["shape"], "z8");
    }

    #[test]
    fn verify_entry_succeeds_and_unknown_id_is_usage() {
        let target = VerifyTarget::Entry("p3.zp_p2.socp.family5(p=3,a=2)".to_string());
        let (r, text) = run(|out| cmd_verify(&target, false, out));
        r.unwrap();
        assert!(text.contains("multiplicative group: m(3)"));
        assert!(text.trim_end().ends_with("ok"));

        let target = VerifyTarget::Entry("p3.nonsense".to_string());
        let (r, _) = run(|out| cmd_verify(&target, false, out));
        assert!(matches!(r, Err(CmdError::Usage(_))));
    }

    #[test]
    fn enumerate_budget_is_a_resource_bound() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("part.ck");
        let (r, text) = run(|out| cmd_enumerate("z2xz4", true, Some(&path), Some(3), false, out));
        match r {
            Err(CmdError::ResourceBound(msg)) => assert!(msg.contains("part.ck")),
            other => panic!("expected resource bound, got {other:?}"),
        }
        assert!(text.contains("complete: false"));
        let cp = Checkpoint::load(&path).unwrap().unwrap();
        assert!(!cp.complete);
        assert_eq!(cp.shape, "z2xz4");
    }

    #[test]
    fn enumerate_writes_complete_checkpoints() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("done.ck");
        let (r, text) = run(|out| cmd_enumerate("z2xz2", true, Some(&path), None, false, out));
        r.unwrap();
        assert!(text.contains("classes: 2"));
        let cp = Checkpoint::load(&path).unwrap().unwrap();
        assert!(cp.complete);
        assert_eq!(cp.mode, CheckpointMode::Classes);
        assert_eq!(cp.tables.len(), 2);
        assert!(cp.tables.iter().all(|t| t.len() == 4));
    }

    #[test]
    fn elementary_cube_requires_deep() {
        let (r, _) = run(|out| cmd_enumerate("z3xz3xz3", true, None, None, false, out));
        assert!(matches!(r, Err(CmdError::Usage(_))));
    }

    #[test]
    fn ybe_export_is_the_flip_for_the_trivial_brace() {
        let (r, text) = run(|out| cmd_ybe("p3.zp3.socp3.trivial(p=2)", true, out));
        r.unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# yang-baxter:"));
        assert_eq!(lines.len(), 65, "check line + 8·8 quadruples");
        for line in &lines[1..] {
            let v: Vec<&str> = line.split(' ').collect();
            assert_eq!((v[0], v[1]), (v[3], v[2]), "flip sends (a,b) to (b,a)");
        }
    }

    #[test]
    fn shape_parsing() {
        assert_eq!(parse_shape("z2xz4").unwrap().moduli(), &[2, 4]);
        assert_eq!(parse_shape("z27").unwrap().p(), 3);
        assert!(parse_shape("y8").is_err());
        assert!(parse_shape("z6").is_err());
        assert!(parse_shape("z49xz7").is_err());
    }
}
