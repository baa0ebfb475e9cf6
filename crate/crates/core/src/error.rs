use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("chart coordinate vanishes at the centre")]
    ChartCoordinateZero,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("INSUFFICIENT_LEVEL: {0}")]
    InsufficientLevel(String),
    #[error("NON_INTEGER: {0}")]
    NonInteger(String),
    #[error("MIXED_SURFACE: {0}")]
    MixedSurface(String),
    #[error("wrong dimension: expected E({expected}), got E({got})")]
    WrongDimension { expected: u32, got: u32 },
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
