use thiserror::Error;

/// Errors raised by the algebraic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator `{label}` has degree 0; the Hilbert series would diverge")]
    ZeroDegreeGenerator { label: String },

    #[error("generator `{label}` has degree {degree} but parity {parity}")]
    ParityMismatch {
        label: String,
        degree: u32,
        parity: &'static str,
    },

    #[error("requested degree {requested} exceeds truncation {available}")]
    TruncationRange { requested: usize, available: usize },

    #[error("variable `{symbol}` has weight {expected}, substitute has weighted degree {found}")]
    WeightMismatch {
        symbol: String,
        expected: u32,
        found: String,
    },

    #[error("variable `{symbol}` declared with conflicting weights {first} and {second}")]
    ConflictingWeights {
        symbol: String,
        first: u32,
        second: u32,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix does not preserve the form J_{{{sign},{g}}}")]
    NotInGroup { sign: char, g: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("basis of size {size} exceeds the configured cap {cap}")]
    BasisCapExceeded { size: usize, cap: usize },

    #[error("coefficient overflow in degree {degree}")]
    Overflow { degree: usize },
}

impl Error {
    /// Range, cap and precondition failures, as opposed to malformed input data.
    pub fn is_range_error(&self) -> bool {
        matches!(
            self,
            Error::TruncationRange { .. }
                | Error::Precondition(_)
                | Error::BasisCapExceeded { .. }
                | Error::Overflow { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
