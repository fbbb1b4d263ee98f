use thiserror::Error;

/// Errors raised across the configuration calculus and the spectral engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("charge {0} is not supported here (k <= 2 required)")]
    ChargeTooLarge(usize),
    #[error("group element is singular")]
    SingularGroupElement,
    #[error("eigen-data leaves the supported quadratic extension")]
    NotSplitOverQi,
    #[error("no special subspace found: {0}")]
    NoSpecialSubspace(String),
    #[error("configuration is not integrable")]
    NotIntegrable,
    #[error("eigenvalue collision: {0}")]
    EigenvalueCollision(String),
    #[error("configuration is not in the gluing neighbourhood: {0}")]
    NotInNL(String),
    #[error("inconsistent pair: {0}")]
    InconsistentPair(String),
    #[error("ring map is not degree preserving: {0}")]
    DegreeMismatch(String),
    #[error("spectral sequence collapse cannot be certified: {0}")]
    NonCollapsing(String),
    #[error("invalid centers: {0}")]
    InvalidCenters(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
