use thiserror::Error;

use crate::algebra::DefectReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse scalar {input:?} at byte {position}: {message}")]
    ScalarSyntax {
        input: String,
        position: usize,
        message: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("algebra {name} is not associative ({} defective triples)", .report.entries.len())]
    NotAssociative {
        name: String,
        report: Box<DefectReport>,
    },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("determinant {0} is not a nonzero constant")]
    NonConstantDeterminant(String),

    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("bound {bound} outside the supported range 1..={max} for dimension {dim}")]
    BoundOutOfRange { dim: usize, bound: i64, max: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown invariant {0:?}")]
    UnknownInvariant(String),

    #[error("document error at {location}: {message}")]
    Document { location: String, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
