use num_bigint::BigInt;
use thiserror::Error;

use crate::seifert::Parity;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not palindromic")]
    NotPalindromic,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("constant coefficient is zero")]
    ZeroConstantTerm,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("rows are linearly dependent")]
    RankDeficient,
    #[error("{parity} parity condition fails: determinant is {det}")]
    ParityViolation { parity: Parity, det: BigInt },
    #[error("parity mismatch: {0} vs {1}")]
    ParityMismatch(Parity, Parity),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("point {0} lies outside the open interval (-1, 1)")]
    OutOfDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("postcondition failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}
