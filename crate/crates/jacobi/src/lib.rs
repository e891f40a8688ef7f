//! File formats, an on-disk cache, the claim harness and the command line
//! for `jacobi-core`.

pub mod cache;
pub mod claims;
pub mod cli;
pub mod codefile;
pub mod report;

use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jacobi_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
