use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rank {n} exceeds enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("KL memo table exceeded its cap of {0} entries")]
    CacheCap(usize),
}

impl Error {
    /// Resource-bound failures, as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::CacheCap(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
