use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A region's hyperbola does not reach the requested column or row.
    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("work stack depth {depth} exceeded limit {limit}")]
    StackOverflow { depth: usize, limit: usize },

    #[error("{0} must be positive")]
    ZeroArgument(&'static str),

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
