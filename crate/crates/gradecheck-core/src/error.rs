use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("modular ranks disagree: rank {r1} mod {p}, rank {r2} mod {p2}")]
    RankMismatch { p: u64, r1: usize, p2: u64, r2: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("value out of range: {0}")]
    Overflow(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra {algebra} has no {what}")]
    Missing { algebra: String, what: &'static str },
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("generators do not generate: closure has dimension {got} of {dim}")]
    DoesNotGenerate { got: usize, dim: usize },
    #[error("homogeneous components collide: {0}")]
    ComponentsCollide(String),
    #[error("not structurable: {0}")]
    NotStructurable(String),
    #[error("unknown catalog entry {name:?}; valid names: {}", valid.join(", "))]
    UnknownCatalog { name: String, valid: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;
