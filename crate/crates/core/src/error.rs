use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} outside [1, {degree}]")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    DuplicatePoint(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("inconsistent congruences")]
    Inconsistent,
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("unknown 2-SAT variable {0}")]
    UnknownVariable(usize),
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("exponent residue {residue} mod {prime} (index {index}) does not encode a bit")]
    UndecodableResidue {
        index: usize,
        prime: u64,
        residue: u64,
    },
    #[error("group order {order} exceeds search cap {cap}")]
    CapExceeded { order: BigUint, cap: u64 },
    #[error("input too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: clause does not have exactly three distinct variables")]
    NotThreeSat { line: usize },
    #[error("line {line}: clause contains a literal and its complement")]
    ComplementaryLiterals { line: usize },
    #[error("line {line}: {msg}")]
    BadBlock { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
