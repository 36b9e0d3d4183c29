use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 2^16)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("field of order {p}^{m} exceeds 2^64")]
    FieldTooLarge { p: u64, m: usize },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    UnreducedCoefficient(u64),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("subfield degree {s} does not divide extension degree {m}")]
    NotADivisor { s: usize, m: usize },
    #[error("coefficient {index} does not lie in the subfield of degree {s}")]
    CoefficientOutsideSubfield { index: usize, s: usize },
    #[error("element does not lie in the span of the given basis")]
    OutsideSpan,
    #[error("the given elements are not linearly independent over F_p")]
    NotABasis,
    #[error("decomposition depth {0} is not allowed here")]
    InvalidDepth(u32),
    #[error("received word has {0} symbols, expected 255")]
    WordLength(usize),
    #[error("field property check failed: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
