//! `braces` — catalog, verification, classification, enumeration and
//! Yang–Baxter export for finite left braces of order p, p² and p³.
//!
//! Exit codes: 0 success, 1 mathematical violation (witness printed),
//! 2 usage or I/O error, 3 resource bound hit (partial results and, when
//! requested, a checkpoint are written first).

use braces_cli::commands::{self, OutputFormat, VerifyTarget};
use clap::{ArgGroup, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "braces",
    version,
    about = "Finite left braces of order p, p² and p³: catalog, verification, classification, enumeration, Yang–Baxter export"
)]
struct Cli {
    /// Worker threads for parallel scans; output content does not depend on
    /// this [default: the BRACES_JOBS environment variable, then all cores].
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the order-p³ catalog.
    Catalog {
        /// The prime.
        #[arg(long)]
        p: u64,
        /// Keep one additive shape: generic (zp3, zp_p2, zp_p_p) or concrete
        /// (z8, z2xz4, ...).
        #[arg(long)]
        shape: Option<String>,
        /// Keep one socle order.
        #[arg(long)]
        socle: Option<u64>,
        /// Output layout.
        #[arg(long, value_enum, default_value = "pretty")]
        format: OutputFormat,
    },
    /// Re-verify a catalog entry or a JSON document.
    #[command(group(ArgGroup::new("target").required(true).args(["entry", "input"])))]
    Verify {
        /// Catalog entry id.
        #[arg(long)]
        entry: Option<String>,
        /// Path to a brace document.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Downgrade annotation mismatches from errors to warnings.
        #[arg(long)]
        lenient: bool,
    },
    /// Classify the order-p³ catalog up to isomorphism.
    Classify {
        /// The prime (2, 3 or 5).
        #[arg(long)]
        p: u64,
    },
    /// Exhaustively enumerate braces on one additive shape.
    Enumerate {
        /// Concrete shape token, e.g. z8, z2xz4, z3xz9.
        #[arg(long)]
        shape: String,
        /// Deduplicate up to isomorphism.
        #[arg(long)]
        up_to_iso: bool,
        /// Write found λ-tables to this file (also on interruption).
        #[arg(long, value_name = "FILE")]
        checkpoint: Option<PathBuf>,
        /// Stop after this many search nodes (exit 3 when hit).
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
        /// Opt in to the long-running z3xz3xz3 enumeration.
        #[arg(long)]
        deep: bool,
    },
    /// Export a catalog entry's Yang–Baxter solution as quadruples.
    Ybe {
        /// Catalog entry id.
        #[arg(long)]
        entry: String,
        /// Re-check braid, involutivity and non-degeneracy first.
        #[arg(long)]
        check: bool,
    },
    /// Run the acceptance suite, one line per criterion.
    Selftest {
        /// Largest prime exercised (2, 3 or 5).
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Include the z3xz3xz3 enumeration and p = 5 classification.
        #[arg(long)]
        deep: bool,
    },
}

fn jobs_from_env() -> Option<usize> {
    std::env::var("BRACES_JOBS").ok()?.parse().ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs.or_else(jobs_from_env) {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: could not size the thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Catalog {
            p,
            shape,
            socle,
            format,
        } => commands::cmd_catalog(*p, shape.as_deref(), *socle, *format, &mut out),
        Command::Verify {
            entry,
            input,
            lenient,
        } => {
            let target = match (entry, input) {
                (Some(id), None) => VerifyTarget::Entry(id.clone()),
                (None, Some(path)) => VerifyTarget::Input(path.clone()),
                _ => unreachable!("clap enforces exactly one target"),
            };
            commands::cmd_verify(&target, *lenient, &mut out)
        }
        Command::Classify { p } => commands::cmd_classify(*p, &mut out),
        Command::Enumerate {
            shape,
            up_to_iso,
            checkpoint,
            budget,
            deep,
        } => commands::cmd_enumerate(
            shape,
            *up_to_iso,
            checkpoint.as_deref(),
            *budget,
            *deep,
            &mut out,
        ),
        Command::Ybe { entry, check } => commands::cmd_ybe(entry, *check, &mut out),
        Command::Selftest { p, deep } => commands::cmd_selftest(*p, *deep, &mut out),
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
