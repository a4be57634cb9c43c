use thiserror::Error;

use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: expected {expected}, got {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("matrix is singular")]
    Singular,

    #[error("map is not an automorphism of the algebra")]
    NotAutomorphism,

    #[error("{what}: dimension cap exceeded (limit {cap}, got {got})")]
    CapExceeded { what: String, cap: usize, got: usize },

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
