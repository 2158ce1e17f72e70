use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}: line {line}, column {column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{source_name}: row {row}: {message}")]
    Csv {
        source_name: String,
        row: u64,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Solver(#[from] fermat_dc::Error),
}

impl CliError {
    /// 2 for bad input, 3 when the solver fails on valid input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(fermat_dc::Error::InvalidConfig(_)) => 2,
            CliError::Solver(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
