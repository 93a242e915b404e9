use thiserror::Error;

/// Errors raised by the simulator, the function classes and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: state has {state}, predicate has {predicate}")]
    DimensionMismatch { state: usize, predicate: usize },

    #[error("marked count {marked} out of range for dimension {dim}")]
    MarkedOutOfRange { marked: usize, dim: usize },

    #[error("grid of {n}^{d} cubes exceeds the cap of {cap}")]
    GridTooLarge { n: usize, d: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("derivative order {order} exceeds smoothness r = {r}")]
    DerivativeOrder { order: u32, r: u32 },

    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { got: usize, expected: usize },

    #[error("bump height {height} exceeds the class bound {bound}")]
    HeightTooLarge { height: f64, bound: f64 },

    #[error("bit string has length {got}, family has {expected} bumps")]
    BitLength { got: usize, expected: usize },

    #[error("empty sample set")]
    EmptySample,

    #[error("need at least {needed} points with distinct x, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("log-log fit requires positive coordinates, got ({x}, {y})")]
    NonPositive { x: f64, y: f64 },

    #[error("unknown function `{0}` (see `list-functions`)")]
    UnknownFunction(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
