use thiserror::Error;

/// Errors surfaced by the toolkit. Each variant maps to a distinct
/// process exit code in the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad arguments or malformed input files.
    #[error("input error: {0}")]
    Input(String),

    /// Malformed edge-list file, with the offending line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Numerical failure (eigensolver did not converge, undefined correlation).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Configuration that cannot produce a valid experiment
    /// (e.g. an edge count incompatible with connectivity).
    #[error("infeasible configuration: {0}")]
    Infeasible(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 2 input, 3 numerical, 4 infeasible.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Io(_) => 2,
            Error::Numerical(_) => 3,
            Error::Infeasible(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
