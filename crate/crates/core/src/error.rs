use thiserror::Error;

/// Errors produced by the construction and verification pipeline.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("not irreducible: {0}")]
    NotIrreducible(String),

    #[error("not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("precision failure: {0}")]
    PrecisionFailure(String),

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
