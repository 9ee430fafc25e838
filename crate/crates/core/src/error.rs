use thiserror::Error;

use crate::parse::ParseError;

/// Errors raised anywhere in the algebra stack.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("monomial order mismatch")]
    OrderMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndexOutOfRange { index: usize, nvars: usize },
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("element does not lie in the submodule")]
    NotInSubmodule,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("lift failure: {0}")]
    LiftFailure(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
