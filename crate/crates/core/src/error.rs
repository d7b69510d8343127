use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("pattern is not normalized (expected a pendant at position 1)")]
    NotNormalized,
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("band index {index} out of range 1..={count}")]
    BandIndex { index: usize, count: usize },
    #[error("eigensolver did not converge for a {size}x{size} matrix after {sweeps} sweeps")]
    NoConvergence { size: usize, sweeps: usize },
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("problem size {size} exceeds the limit {limit}")]
    SizeLimit { size: usize, limit: usize },
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::Consistency(_))
    }
}
