use std::path::PathBuf;

use mms_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const COMPUTATION: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::BadParam(_) => exit::VALIDATION,
            CliError::Io { .. } | CliError::Json { .. } | CliError::Csv(_) => exit::IO,
            CliError::Pool(_) | CliError::Selftest(_) => exit::COMPUTATION,
        }
    }
}

/// Input problems map to `VALIDATION`; failures of a computation on valid
/// input map to `COMPUTATION`.
fn core_exit_code(e: &CoreError) -> i32 {
    use CoreError::*;
    match e {
        DisconnectedGraph { .. }
        | DuplicateEdge(..)
        | NonpositiveLength(..)
        | NegativeMeasure(..)
        | ZeroTotalMeasure
        | SelfLoop(_)
        | DuplicateVertex(_)
        | EmptyGraph
        | UnknownVertex(_)
        | SamePoles
        | InvalidTruncation(_)
        | PoleNotInterior(_)
        | NotSeparating
        | LengthMismatch { .. }
        | BadParam(_) => exit::VALIDATION,
        _ => exit::COMPUTATION,
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
