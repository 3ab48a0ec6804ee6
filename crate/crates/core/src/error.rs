use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid matrix: not Hermitian (max |A_ij - conj(A_ji)| = {max_asymmetry:.3e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A value violates the documented range or structure of `field`.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("measure {measure} is undefined in dimension {dim}")]
    DegenerateDimension { measure: String, dim: usize },

    #[error("measure {0} is not normalized; particle and mixedness need a normalized measure")]
    MeasureNotNormalized(String),

    #[error("dimension {dim} unsupported here (max {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    /// An internal consistency check failed. Never expected on valid input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// `false` only for internal invariant breaches; every other variant is
    /// caused by bad input.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}
