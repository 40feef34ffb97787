use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const VALID: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const MALFORMED: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] htsig::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
            CliError::Malformed(_) => exit::MALFORMED,
            CliError::Core(e) => match e {
                htsig::Error::UnknownParamSet { .. } | htsig::Error::UnknownBackend { .. } | htsig::Error::Bench(_) => exit::USAGE,
                _ => exit::MALFORMED,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
