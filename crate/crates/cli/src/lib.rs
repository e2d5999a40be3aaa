//! Command implementations behind the `zetaphase` binary: point
//! evaluation, grid scans, zero catalogs and the verification suites.

// Reference values keep every digit of the computation that produced them.
#![allow(clippy::excessive_precision)]

pub mod catalog;
pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

pub use commands::{cmd_eval, cmd_scan, cmd_zeros, ScanColumn, ZeroKindArg, ZerosRequest};
pub use config::{OutputFormat, RunConfig};
pub use verify::{cmd_verify, Check, Suite, VerifyReport};

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SEARCH: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(zetaphase::Error),

    #[error("search failed: {0}")]
    Search(zetaphase::Error),

    #[error("verification failed: {failed} of {total} checks")]
    VerifyFailed { failed: usize, total: usize },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed { .. } => EXIT_VERIFY_FAILED,
            CliError::Search(_) => EXIT_SEARCH,
            _ => EXIT_USAGE,
        }
    }
}

impl From<zetaphase::Error> for CliError {
    fn from(e: zetaphase::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e)
        } else {
            CliError::Search(e)
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
