//! Error type shared by every module in the crate.

use std::fmt;

/// Errors reported by constructions and condition-number computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix is singular (determinant zero); for companion matrices this
    /// happens exactly when c_0 = 0.
    Singular,
    /// Equivalence search refused: dimension exceeds the configured cap.
    DimensionTooLarge { n: usize, cap: usize },
    /// Generic dimension mismatch between two objects.
    DimensionMismatch { expected: usize, got: usize },
    /// A monic polynomial of degree >= 2 is required.
    DegreeTooSmall { degree: usize },
    /// The construction or formula needs c_0 != 0.
    ZeroConstantTerm,
    /// The closed form is only stated for c_0 = 1.
    NonUnitConstantTerm,
    /// Factor index or step size outside 0..=n-1 (resp. 1..=n-1).
    IndexOutOfRange { index: usize, bound: usize },
    /// The labeled matrix carries no single row or column holding both c_0
    /// and c_1, so it has no initial step size.
    NotFiedler,
    /// Ratio-bound hypothesis violated: both u and y are nonzero.
    HypothesisNotMet,
    /// The given sequence is not a permutation of 0..n-1.
    InvalidPermutation,
    /// Stripe tuple rejected (empty, zero part, sum mismatch, or t_1 < t_i).
    InvalidTuple(String),
    /// n = k(m+1) fails for the requested equal-stripe shape.
    BadShape { n: usize, k: usize, m: usize },
    /// ell outside 3..=n-2 for the perturbed family.
    BadEll { ell: usize, n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Singular => write!(f, "matrix is singular"),
            Error::DimensionTooLarge { n, cap } => {
                write!(f, "dimension {} exceeds search cap {}", n, cap)
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            Error::DegreeTooSmall { degree } => {
                write!(f, "polynomial degree {} is below the minimum 2", degree)
            }
            Error::ZeroConstantTerm => write!(f, "constant term c_0 is zero"),
            Error::NonUnitConstantTerm => write!(f, "constant term c_0 is not 1"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {} out of range (bound {})", index, bound)
            }
            Error::NotFiedler => {
                write!(f, "no single row or column contains both c_0 and c_1")
            }
            Error::HypothesisNotMet => {
                write!(f, "neither u nor y is the zero vector")
            }
            Error::InvalidPermutation => write!(f, "not a permutation of 0..n-1"),
            Error::InvalidTuple(reason) => write!(f, "invalid stripe tuple: {}", reason),
            Error::BadShape { n, k, m } => {
                write!(f, "n = {} is not k(m+1) for k = {}, m = {}", n, k, m)
            }
            Error::BadEll { ell, n } => {
                write!(f, "ell = {} outside 3..={} for n = {}", ell, n.saturating_sub(2), n)
            }
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
