use thiserror::Error;

/// Errors shared across the laboratory.
///
/// Domain violations (bad dimensions, out-of-range parameters) are reported
/// eagerly before any computation; numerical failures (non-convergence,
/// fully masked rows) surface from inside an otherwise valid run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fully masked row {row}: every logit is -inf")]
    FullyMaskedRow { row: usize },

    #[error("quadrature did not converge: refinement still above {tolerance:e} after {evaluations} evaluations")]
    QuadratureDidNotConverge { evaluations: usize, tolerance: f64 },

    #[error("epsilon too large for length {n}: requires epsilon < ln({n})")]
    EpsilonTooLargeForLength { n: usize },

    #[error("sample dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("rotary schemes need an even head dimension, got {0}")]
    OddRotaryDimension(usize),

    #[error("log_gamma is defined for x > 0, got {0}")]
    LogGammaDomain(f64),

    #[error("negative probability {value} at row {row}, column {col}")]
    NegativeProbability { row: usize, col: usize, value: f64 },

    #[error("scale product t = lambda^2 v^2 = {t} must lie in (0, 1)")]
    ScaleProductOutOfRange { t: f64 },

    #[error("angle density needs dimension >= 3, got {0}")]
    AngleDensityDimension(usize),

    #[error("mask does not fit: sinks {sinks} + window {window} exceeds sequence length {n}")]
    MaskTooWide {
        sinks: usize,
        window: usize,
        n: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("empty sweep grid: {0}")]
    EmptyGrid(String),

    #[error("at grid point {point}: {source}")]
    GridPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
