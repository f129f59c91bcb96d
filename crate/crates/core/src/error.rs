use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. evaluating a
    /// Laurent polynomial with negative exponents at `z = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A denominator (q-)Pochhammer factor vanished before the series terminated.
    #[error("singular parameter: {0}")]
    SingularParameter(String),

    /// No numerator parameter of a basic hypergeometric series equals `q^-n`.
    #[error("series does not terminate: {0}")]
    NonTerminating(String),

    /// A Chebyshev coupling coefficient has a vanishing denominator.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// A symbol for some refinement level cannot be formed at this `v`.
    #[error("degenerate level{}: {detail}", level.map(|k| format!(" k={k}")).unwrap_or_default())]
    DegenerateLevel { level: Option<usize>, detail: String },

    #[error("singular matrix: pivot {pivot} in column {column}")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("unsupported boundary: only closed polygons can be refined")]
    UnsupportedBoundary,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn degenerate(detail: impl Into<String>) -> Self {
        Error::DegenerateLevel {
            level: None,
            detail: detail.into(),
        }
    }

    /// Attaches the refinement level to a degenerate-level error.
    pub fn at_level(self, k: usize) -> Self {
        match self {
            Error::DegenerateLevel { detail, .. } => Error::DegenerateLevel {
                level: Some(k),
                detail,
            },
            other => other,
        }
    }
}
