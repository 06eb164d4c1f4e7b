use std::path::PathBuf;

use llspin::geometry::{ChartError, GeometryError};
use llspin::spinor::SpinorError;
use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Failure = 1,
    Parse = 2,
    NotLightlike = 3,
    RankCollapse = 4,
    VerificationFailed = 5,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Chart {
        path: PathBuf,
        #[source]
        source: ChartError,
    },
    #[error("{path}: {source}")]
    Spinor {
        path: PathBuf,
        #[source]
        source: SpinorError,
    },
    #[error("chart cannot be evaluated: {0}")]
    Geometry(#[from] GeometryError),
    #[error("invalid tolerance {0}; expected a positive finite number")]
    Tolerance(f64),
}

impl CliError {
    /// Input problems map to the parse code; only writing the report is a
    /// generic failure.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Write { .. } => ExitCode::Failure,
            CliError::Geometry(GeometryError::NotLightlike { .. }) => ExitCode::NotLightlike,
            CliError::Geometry(GeometryError::DegenerateRank { .. }) => ExitCode::RankCollapse,
            _ => ExitCode::Parse,
        }
    }
}
