use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point or parameter outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A finite omega word ran out before the requested number of steps.
    #[error("omega word exhausted after {available} bits, {needed} needed")]
    OmegaExhausted { needed: usize, available: usize },

    /// A closure (orbit graph, Markov points) grew past its cap.
    #[error("cap of {cap} exceeded while building {what}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("partition is not Markov: image of cell {cell} under branch {branch} is not a union of cells")]
    NonMarkov { cell: usize, branch: u8 },

    #[error("transfer operator fixed space has dimension {dimension}, expected 1")]
    NonUniqueFixedPoint { dimension: usize },

    /// A binary64 solve whose residual exceeded its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
