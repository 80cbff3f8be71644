//! Line-oriented checkpoint files for enumeration runs.
//!
//! The header is a fixed block of `#` lines recording the format version,
//! the carrier shape token, whether tables were deduplicated up to
//! isomorphism, and whether the run finished or hit its node budget. Every
//! following line is one λ-table: n space-separated integers, where the k-th
//! is the position of λ_k in the carrier's automorphism enumeration order.
//! The format is append-friendly, diffable, and independent of pointer
//! widths, so interrupted long runs leave a usable artifact behind.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use thiserror::Error;

/// Current checkpoint format version.
pub const CHECKPOINT_VERSION: u32 = 1;

const MAGIC: &str = "# braces checkpoint v";

/// Whether the table lines are raw solutions or canonical class
/// representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckpointMode {
    Raw,
    Classes,
}

impl fmt::Display for CheckpointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointMode::Raw => write!(f, "raw"),
            CheckpointMode::Classes => write!(f, "classes"),
        }
    }
}

/// Parsed or to-be-written checkpoint contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    /// Carrier shape token, e.g. `z3xz3xz3`.
    pub shape: String,
    /// Raw solutions or canonical representatives.
    pub mode: CheckpointMode,
    /// False when a node budget cut the run short.
    pub complete: bool,
    /// λ-tables, one per line, as automorphism positions per element.
    pub tables: Vec<Vec<u16>>,
}

/// Why a checkpoint file failed to parse.
#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("missing or unsupported version line (expected `{MAGIC}{CHECKPOINT_VERSION}`)")]
    BadVersion,
    #[error("missing header line `# {0}: ...`")]
    MissingHeader(&'static str),
    #[error("bad header value for `{0}`: `{1}`")]
    BadHeader(&'static str, String),
    #[error("line {0}: expected space-separated integers")]
    BadTableLine(usize),
}

impl Checkpoint {
    /// Serialize in the documented line format.
    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{MAGIC}{CHECKPOINT_VERSION}")?;
        writeln!(w, "# shape: {}", self.shape)?;
        writeln!(w, "# mode: {}", self.mode)?;
        writeln!(w, "# complete: {}", self.complete)?;
        for table in &self.tables {
            let line: Vec<String> = table.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Parse the documented line format.
    pub fn parse(text: &str) -> Result<Checkpoint, CheckpointError> {
        let mut lines = text.lines();
        match lines.next() {
            Some(first) if first.trim() == format!("{MAGIC}{CHECKPOINT_VERSION}") => {}
            _ => return Err(CheckpointError::BadVersion),
        }
        let mut header = |key: &'static str| -> Result<String, CheckpointError> {
            let line = lines.next().ok_or(CheckpointError::MissingHeader(key))?;
            line.strip_prefix(&format!("# {key}: "))
                .map(|v| v.trim().to_string())
                .ok_or(CheckpointError::MissingHeader(key))
        };
        let shape = header("shape")?;
        let mode = match header("mode")?.as_str() {
            "raw" => CheckpointMode::Raw,
            "classes" => CheckpointMode::Classes,
            other => return Err(CheckpointError::BadHeader("mode", other.to_string())),
        };
        let complete = match header("complete")?.as_str() {
            "true" => true,
            "false" => false,
            other => return Err(CheckpointError::BadHeader("complete", other.to_string())),
        };
        let mut tables = Vec::new();
        for (k, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let table: Result<Vec<u16>, _> =
                line.split_whitespace().map(|tok| tok.parse()).collect();
            tables.push(table.map_err(|_| CheckpointError::BadTableLine(k + 5))?);
        }
        Ok(Checkpoint {
            shape,
            mode,
            complete,
            tables,
        })
    }

    /// Write to a file, creating or truncating it.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)
    }

    /// Read and parse a file.
    pub fn load(path: &Path) -> io::Result<Result<Checkpoint, CheckpointError>> {
        Ok(Checkpoint::parse(&fs::read_to_string(path)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        Checkpoint {
            shape: "z2xz4".to_string(),
            mode: CheckpointMode::Classes,
            complete: false,
            tables: vec![vec![0, 3, 17, 5, 9, 12, 1, 4], vec![0; 8]],
        }
    }

    #[test]
    fn round_trip() {
        let cp = sample();
        let mut buf = Vec::new();
        cp.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# braces checkpoint v1\n# shape: z2xz4\n"));
        assert_eq!(Checkpoint::parse(&text).unwrap(), cp);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            Checkpoint::parse("nonsense"),
            Err(CheckpointError::BadVersion)
        ));
        let text = "# braces checkpoint v1\n# shape: z8\n# mode: upside-down\n# complete: true\n";
        assert!(matches!(
            Checkpoint::parse(text),
            Err(CheckpointError::BadHeader("mode", _))
        ));
        let text = "# braces checkpoint v1\n# shape: z8\n# mode: raw\n# complete: true\n1 x 3\n";
        assert!(matches!(
            Checkpoint::parse(text),
            Err(CheckpointError::BadTableLine(5))
        ));
    }
}
