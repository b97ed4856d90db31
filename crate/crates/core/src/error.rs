use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {denominator} is not invertible modulo {modulus}")]
    NotInvertible { denominator: BigInt, modulus: u32 },
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("order exceeds degree: cannot apply an order-{order} operator to a form of degree {degree}")]
    OrderExceedsDegree { order: u32, degree: u32 },
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("all coefficients of the linear form are zero")]
    ZeroLinearForm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a level presentation: generators have degrees {0:?}")]
    NotLevel(Vec<u32>),
    #[error("non-minimal generating set: {generators} generators span a space of dimension {dimension}")]
    NonMinimal { generators: usize, dimension: usize },
    #[error("invalid h-vector: {0}")]
    InvalidHVector(String),
    #[error("duplicate point at index {0} (proportional to an earlier point)")]
    DuplicatePoint(usize),
    #[error("verification failed after {attempts} attempts: {detail}")]
    VerificationFailed { attempts: u32, detail: String },
    #[error("{0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
