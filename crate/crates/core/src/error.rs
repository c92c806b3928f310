use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} requires dimension >= {required}, found {found}")]
    DimensionTooSmall {
        what: &'static str,
        required: usize,
        found: usize,
    },

    #[error("metric is singular or not symmetric")]
    SingularMetric,

    #[error("matrix is not symmetric (|a_ij - a_ji| = {defect:e} at ({row}, {col}))")]
    NotSymmetric { row: usize, col: usize, defect: f64 },

    #[error("matrix power must be >= 1, got {0}")]
    InvalidPower(u32),

    #[error("least-squares fit needs at least one basis tensor")]
    EmptyBasis,

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("H^3 relation fails (residual {residual:e}); tau undefined")]
    CubicRelationFails { residual: f64 },

    #[error("expected exactly {expected} distinct principal curvatures, found {found}")]
    DistinctCount { expected: usize, found: usize },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("no Roter equation at this point (fit residual {residual:e})")]
    NotRoter { residual: f64 },
}
