use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("-{0} is not a fundamental discriminant")]
    NotFundamental(u64),
    #[error("D = {0} has extra units and is outside the simplest-character theory")]
    SpecialDiscriminant(u64),
    #[error("{p} does not divide D = {disc}")]
    InvalidPrime { p: u64, disc: u64 },
    #[error("element is not coprime to the conductor")]
    NotCoprime,
    #[error("operation requires a different ramification case: {0}")]
    WrongCase(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("element basis does not match the field")]
    BasisMismatch,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("series did not reach the requested accuracy within {max_terms} terms ({what})")]
    ConvergenceFailure { what: &'static str, max_terms: u64 },
    #[error("root number is {0}; the derivative formula needs W = -1")]
    WrongSign(i32),
    #[error("missing value: {0}")]
    MissingValue(&'static str),
    #[error("prime {0} does not satisfy the example's hypotheses")]
    BadPrime(u64),
    #[error("the constructed character is even (value +1 at -1)")]
    NotOdd,
    #[error("numerics inconclusive: {0}")]
    Inconclusive(&'static str),
}
