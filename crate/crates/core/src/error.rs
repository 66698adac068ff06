use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {0}^{1} does not fit the element encoding")]
    FieldTooLarge(u32, u32),
    #[error("operands belong to different fields or spaces")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("infeasible scale: {0}")]
    InfeasibleScale(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("rank table violates the q-matroid axioms: {0}")]
    InvalidRankTable(String),
    #[error("function is not submodular")]
    NotSubmodular,
    #[error("value table does not cover the lattice: expected {expected} entries, found {found}")]
    IncompleteTable { expected: usize, found: usize },
    #[error("subspace has nullity {0}, expected 1")]
    WrongNullity(usize),
    #[error("family and matroid live on different ground sets")]
    GroundMismatch,
    #[error("extension of degree {0} exceeds the configured field cap")]
    ExtensionTooLarge(u64),
    #[error("representations require a prime base field, got GF({p}^{e})")]
    UnsupportedBaseField { p: u32, e: u32 },
    #[error("malformed input: {0}")]
    Parse(String),
    /// Two procedures that a theorem says must agree gave different answers.
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
