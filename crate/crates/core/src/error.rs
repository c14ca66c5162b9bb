use thiserror::Error;

/// Errors raised by the evaluation, oracle and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The thickening identity divides by `1 + y + ... + y^(k-1)`, which vanished.
    #[error("degenerate denominator: 1 + y + ... + y^{} is zero at y = {y}", .k - 1)]
    DegenerateDenominator { k: u32, y: String },

    #[error("size limit exceeded: {what} is {size}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("subset {0:#b} is not a basis")]
    NotABasis(u32),

    #[error("matroid has loops or coloops: {0}")]
    LoopsOrColoops(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_size(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimit { what, size, limit })
    } else {
        Ok(())
    }
}
