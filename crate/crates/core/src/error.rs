use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("polynomial not reducible mod {p}: a denominator vanishes")]
    NotReducible { p: u64 },
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad prime {p} for d = {d}")]
    BadPrime { d: i64, p: u64 },
    #[error("twist kernel inference for d = {d} is ambiguous: {survivors} candidate classes survive")]
    InferenceAmbiguous { d: i64, survivors: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("corrupt cache {path}:{line}: {msg}")]
    CacheCorrupt {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
