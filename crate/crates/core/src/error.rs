use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("comparison undecided at {bits} bits: {detail}")]
    Undecided { bits: u32, detail: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dyadic: not an itinerary")]
    Dyadic,
    #[error("not an itinerary: {0}")]
    NotItinerary(String),
    #[error("not a kneading sequence: {0}")]
    NotKneading(String),
    #[error("sequence is not purely periodic: {0}")]
    NotPeriodic(String),
    #[error("prefix too short: {0}")]
    PrefixTooShort(String),
    #[error("outside the valid domain: {0}")]
    Domain(String),
    #[error("orbit graph is not closed")]
    OpenGraph,
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap(_) | Error::DegreeCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
