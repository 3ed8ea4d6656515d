//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree {0} is outside 1..=4")]
    UnsupportedDegree(u32),
    #[error("field of size {q} exceeds the cap {cap}")]
    CapExceeded { q: u64, cap: u32 },
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("census of a field of size {q} exceeds the cap {cap}")]
    CapExceeded { q: u32, cap: u32 },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("unsupported model degree {0}")]
    BadModelDegree(usize),
    #[error("tally has no entry for nu={nu} n1={n1} n2={n2}")]
    MissingEntry { nu: String, n1: u32, n2: u32 },
    #[error("expected a {expected} tally, found {found}")]
    StratumMismatch { expected: String, found: String },
    #[error("tally for field ({found_p},{found_n}) where ({p},{n}) was required")]
    FieldMismatch { p: u32, n: u32, found_p: u32, found_n: u32 },
    #[error("tally variant flags {found} differ from required {expected}")]
    VariantMismatch { expected: String, found: String },
    #[error("corrupt tally file: {0}")]
    CorruptFile(String),
    #[error("cannot merge tallies: {0}")]
    MergeMismatch(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymfuncError {
    #[error("weight l+m = {0} is odd")]
    OddWeight(u32),
    #[error("need l >= m, got ({l},{m})")]
    NotDominant { l: u32, m: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModformError {
    #[error("weight {0} is odd")]
    OddWeight(u32),
    #[error("eta quotient has non-integral q-offset {0}/24")]
    NonIntegralOffset(i64),
    #[error("level {0} is not supported")]
    UnsupportedLevel(u32),
    #[error("basis for level {level} weight {weight} has rank {rank}, expected {expected}")]
    SpanDeficient { level: u32, weight: u32, rank: usize, expected: usize },
    #[error("level {level} weight {weight} has an irrational Hecke eigensystem")]
    IrrationalEigenvalue { level: u32, weight: u32 },
    #[error("missing eigen-data: {0}")]
    MissingEigenData(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("weight l+m = {0} is odd")]
    OddWeight(u32),
    #[error("need l >= m, got ({l},{m})")]
    NotDominant { l: u32, m: u32 },
    #[error("assembled trace {0} is not an integer")]
    NonIntegralTrace(String),
    #[error("missing tally: {0}")]
    MissingTally(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("exponent (|lambda| - n1 - n2)/2 is not an integer at n1={n1}, n2={n2}")]
    HalfIntegralExponent { n1: u32, n2: u32 },
    #[error("no variant reproduces the calibration data")]
    NoVariantFits,
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Modform(#[from] ModformError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
}
