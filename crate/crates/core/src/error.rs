use thiserror::Error;

/// Errors raised while constructing or checking braid-matrix structures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, row: usize, col: usize },

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionCap { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("repeated eigenvalues {0} and {1}")]
    RepeatedEigenvalues(String, String),

    #[error("minimal polynomial residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    MinimalPolynomial { residual: f64, tol: f64 },

    #[error("projector basis invalid: {0}")]
    InvalidBasis(String),

    #[error("trace {trace} of projector {label} is not an integer within {guard:.1e}")]
    NonIntegralTrace {
        label: String,
        trace: f64,
        guard: f64,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("spectral parameter {theta} lies within {radius:.1e} of a pole at {pole}")]
    PoleProximity { theta: f64, pole: f64, radius: f64 },

    #[error("matrix is numerically singular (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("row {row} has a vanishing bilinear norm; use general inversion")]
    VanishingRowNorm { row: usize },

    #[error("off-diagonal residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotDiagonal { residual: f64, tol: f64 },

    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
