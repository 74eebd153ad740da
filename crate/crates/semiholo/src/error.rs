use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the command-line layer.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed literal, expression or document.
    #[error("parse error: {0}")]
    Parse(String),
    /// Expression syntax error at a 1-based column.
    #[error("parse error at column {column}: {message}")]
    Syntax {
        /// 1-based column of the offending character.
        column: usize,
        /// What was expected.
        message: String,
    },
    /// Inconsistent or invalid configuration.
    #[error("config error: {0}")]
    Config(String),
    /// A kernel error (rank overflow is mapped separately).
    #[error(transparent)]
    Core(#[from] semiholo_core::Error),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },
    /// Writing to standard output failed.
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for parse and config errors, 3 for rank
    /// overflow, 4 for IO errors.
    pub fn exit_code(&self) -> i32 {
        use semiholo_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Output(_) => 4,
            CliError::Core(E::RankOverflow { .. }) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// Result alias for the command-line layer.
pub type Result<T> = std::result::Result<T, CliError>;
