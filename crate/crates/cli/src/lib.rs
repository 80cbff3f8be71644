//! Library half of the `braces` command-line tool.
//!
//! The binary in `main.rs` is a thin argument parser; everything it does —
//! catalog listing, verification, classification, enumeration with
//! checkpoints, Yang–Baxter export, and the acceptance selftest — lives here
//! so the integration and acceptance test targets can call the exact same
//! code paths in-process.

pub mod checkpoint;
pub mod commands;
pub mod document;
pub mod selftest;

pub use checkpoint::{Checkpoint, CheckpointError, CheckpointMode, CHECKPOINT_VERSION};
pub use commands::{CmdError, CmdResult, OutputFormat, VerifyTarget};
pub use document::{BraceDocument, DocumentError};
