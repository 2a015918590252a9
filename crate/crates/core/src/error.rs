use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("neuron count {0} out of range (1..=64)")]
    NeuronCount(usize),
    #[error("codeword {word} has neurons above n = {n}")]
    WordOutOfRange { word: String, n: usize },
    #[error("duplicate codeword {word} at position {index}")]
    DuplicateCodeword { word: String, index: usize },
    #[error("a code needs at least one codeword")]
    EmptyCode,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid json: {0}")]
    Json(String),
    #[error("malformed realization: {0}")]
    Realization(String),
    #[error("realization mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: String, found: String },
    #[error("capacity exceeded: {what} = {value} is above the cap {cap}")]
    Capacity { what: &'static str, value: usize, cap: usize },
    #[error("arity mismatch: stage expects {expected} neurons, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("invalid code map: {0}")]
    Map(String),
    #[error("codeword {word} is not a member of the inclusion target")]
    NotInTarget { word: String },
    #[error("ring size mismatch: {0} vs {1}")]
    RingMismatch(usize, usize),
    #[error("endomorphism is not bijective")]
    NotBijective,
    #[error("invalid circulant parameters n = {n}, p = {p}")]
    Circulant { n: usize, p: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
