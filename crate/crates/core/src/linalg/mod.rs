//! Exact scalar arithmetic and dense linear algebra over prime fields and
//! the rationals.

mod field;
mod matrix;

pub use field::{is_prime, normalize_leading_one, FieldSpec, Scalar};
pub use matrix::{in_span, Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} times {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot read {0:?} as a field element")]
    BadScalar(String),
}
