use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] levyarea::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot read eigenvalue file {path}: {source}")]
    EigenFile {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("eigenvalue file line {line}: expected a positive real, got '{text}'")]
    EigenValue { line: usize, text: String },
    #[error("eigenvalue file has {found} entries but --dim is {expected}")]
    EigenCount { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CliError>;
