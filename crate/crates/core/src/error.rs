use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("map is not equivariant: {0}")]
    Equivariance(String),
    #[error("axiom `{axiom}` fails at {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("position {i} out of range 1..={max}")]
    Position { i: usize, max: usize },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("not exact: {0}")]
    NotExact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
