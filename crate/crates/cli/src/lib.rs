//! Command-line front end: the document format, verification suites, and
//! JSON-lines reports.

pub mod commands;
pub mod document;
pub mod report;

use std::str::FromStr;

use ihsimp::algebra::Coefficients;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("unknown perversity {0:?}")]
    UnknownPerversity(String),
    #[error("unknown corpus member {name:?}; known: {known}")]
    UnknownCorpus { name: String, known: String },
    #[error("invalid ring {0:?}; expected Z or Zp:P with P prime")]
    Ring(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    /// `2` for usage and parse errors, `1` when a computation fails.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }

    pub fn compute(e: impl std::fmt::Display) -> CliError {
        CliError::Compute(e.to_string())
    }
}

/// A coefficient ring as written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring(pub Coefficients);

impl FromStr for Ring {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Ring, CliError> {
        if s == "Z" {
            return Ok(Ring(Coefficients::Integers));
        }
        let p = s.strip_prefix("Zp:").and_then(|p| p.parse::<u64>().ok()).ok_or_else(|| CliError::Ring(s.to_string()))?;
        Coefficients::prime(p).map(Ring).map_err(|_| CliError::Ring(s.to_string()))
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Prime(p) => write!(f, "Zp:{}", p.modulus()),
        }
    }
}

/// What a command printed and whether a check failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed)
    }

    pub fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}
