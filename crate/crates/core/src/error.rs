use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),

    #[error("quartic is degenerate at this specialization: {0}")]
    QuarticDegenerate(String),

    #[error("point cannot be mapped: {0}")]
    UnmappablePoint(String),

    #[error("point is not on the curve: {0}")]
    OffCurve(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
