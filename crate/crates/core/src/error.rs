use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no {n}-th roots of unity in a field of order {order}")]
    NoRootsOfUnity { n: u64, order: u64 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("ramified reduction unsupported: characteristic {p} divides conductor {m}")]
    RamifiedReduction { p: u64, m: u64 },
    #[error("N too small for case: {0}")]
    NTooSmall(String),
    #[error("exponent vector malformed: {0}")]
    MalformedExponents(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("integrality violated: {0}")]
    IntegralityViolated(String),
    #[error("element does not lie in the requested subfield: {0}")]
    NotInSubfield(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
