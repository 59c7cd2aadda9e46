//! Command-line surface of the droplet library: argument parsing, commands
//! and the JSON, CSV and SVG emitters. Every output is a pure function of
//! the arguments, so identical invocations give byte-identical files.

// `!(x >= 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod format;
pub mod scan;
pub mod svg;

use droplet_core::Error;

/// Schema tag carried by every JSON document and CSV header.
pub const SCHEMA: &str = "droplet-lab/1";

/// A command failure, mapped to the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    /// Malformed or out-of-range input.
    #[error("bad input: {0}")]
    BadInput(String),
    /// The parameters fall in the two-component regime.
    #[error("{0}")]
    Unsupported(String),
    /// A numerical procedure did not converge.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// Reading or writing a file failed.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Failure {
    /// Exit code: 2 bad input or io, 3 unsupported regime, 4 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::BadInput(_) | Failure::Io(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::NonConvergence(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::OutOfDomain(_)
            | Error::InsideDomain
            | Error::Pole => Failure::BadInput(e.to_string()),
            Error::UnsupportedRegime => Failure::Unsupported(e.to_string()),
            Error::Inconsistent(_) | Error::Bracket(_) => Failure::NonConvergence(e.to_string()),
        }
    }
}

/// What a command produced: text for standard output, files to write and
/// warnings for standard error. A failure may still come with output, as
/// for a Fekete run that stopped early.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    /// Standard output.
    pub stdout: String,
    /// `(path, content)` pairs.
    pub files: Vec<(std::path::PathBuf, String)>,
    /// Lines for standard error.
    pub warnings: Vec<String>,
}
