use thiserror::Error;

/// Errors raised by the algebra engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invariant factor must be positive, got {0}")]
    InvalidFactor(u64),

    #[error("element {element} does not belong to the group with invariant factors {group}")]
    ParentMismatch { element: String, group: String },

    #[error("coordinate {value} is out of range for a cyclic factor of order {modulus}")]
    CoordinateOutOfRange { value: u64, modulus: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("bound exceeded: {what} is {value}, limit is {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("generator image {index} does not respect the generator order {order}")]
    IllDefinedEndomorphism { index: usize, order: u64 },

    #[error("endomorphism is not bijective")]
    NotAutomorphism,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a power of an odd prime")]
    NotOddPrimePower(u64),

    #[error("{alpha} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { alpha: u64, modulus: u64 },

    #[error("{n} is not a proper divisor of {order}")]
    NotProperDivisor { n: u64, order: u64 },

    #[error("operation requires a cyclic group, got invariant factors {0}")]
    NotCyclic(String),

    #[error("test requires an odd degree, got {0}")]
    EvenDegree(u64),

    #[error("test requires an odd prime degree, got {0}")]
    NotOddPrimeDegree(u64),

    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),

    #[error("element is zero or a unit")]
    ZeroOrUnit,

    #[error("element is not integral in the ring of integers")]
    NotIntegral,

    #[error("assignment has {got} entries but the group has order {expected}")]
    AssignmentLength { expected: usize, got: usize },

    #[error("generator images are inconsistent with the group relations")]
    InconsistentGenerators,

    #[error("predicate {predicate} excluded a pair that has a witness action")]
    PredicateContradiction { predicate: String },

    #[error("invalid action: {0}")]
    ActionViolation(Box<crate::action::Violation>),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
