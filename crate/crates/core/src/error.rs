use std::path::PathBuf;

/// Errors produced by `rszeta-core`.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid weight {0}: must be even and at least {1}")]
    InvalidWeight(i64, i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence too short: need {needed} entries, have {available}")]
    Length { needed: usize, available: usize },

    #[error("coefficient table too short: need n up to {needed}, table has {available}")]
    TableTooShort { needed: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("outside range of validity: {0}")]
    OutOfValidity(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("coefficient file is not contiguous: expected n = {expected}, found n = {found}")]
    Contiguity { expected: u64, found: u64 },

    #[error("coefficients are not normalized: a(1) = {0}, expected 1")]
    Normalization(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("unsupported cache version: {0}")]
    Version(String),

    #[error("checksum mismatch: {0}")]
    Checksum(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
