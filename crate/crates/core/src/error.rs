use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("exponent grids are incommensurate: steps {0} and {1}")]
    GridMismatch(f64, f64),
    #[error("division by a series with zero leading coefficient")]
    DivisionSingularity,
    #[error("series cannot be normalized: {0}")]
    NonNormalizable(String),
    #[error("right-hand side is singular at the initial value {0}")]
    SingularInitialCondition(f64),
    #[error("degenerate Padé table for [{m}/{n}]: pivot {pivot:e} below threshold")]
    DegenerateTable { m: usize, n: usize, pivot: f64 },
    #[error("insufficient coefficients: need order {needed}, have {available}")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("order deficit: {0}")]
    OrderDeficit(String),
    #[error("unmatchable asymptote: {0}")]
    UnmatchableAsymptote(String),
    #[error("parameter matching failed: {0}")]
    MatchingFailure(String),
    #[error("negative bracket at level {level} raised to non-integer power (x = {x})")]
    Domain { level: usize, x: f64 },
    #[error("ambiguous asymptote: {0}")]
    AmbiguousAsymptote(String),
    #[error("irrational factor inconsistent with the small-variable series: leading ratio {0}")]
    InconsistentIrrationalFactor(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("unknown baseline `{0}`")]
    UnknownBaseline(String),
    #[error("template mismatch: {0}")]
    TemplateMismatch(String),
    #[error("{label}: {source}")]
    InApproximant { label: String, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
