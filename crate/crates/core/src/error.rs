use thiserror::Error;

/// Errors produced by the coding, extraction and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("enumeration budget exceeded: {what} = {value} (limit {limit})")]
    Resource {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("subcode check failed: row {row} of the inner generator is not a codeword of the outer code")]
    Nesting { row: usize },

    #[error("vector is not a codeword of the outer code")]
    Membership,

    #[error("index {index} out of range (bound {bound})")]
    Range { index: u64, bound: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
