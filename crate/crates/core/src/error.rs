use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex pair ({0},{1})")]
    InvalidPair(usize, usize),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("degree {degree} exceeds truncation bound {bound}")]
    Truncation { degree: usize, bound: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("division is not exact: {0}")]
    NotExact(String),
    #[error("mixed degrees in {0}")]
    MixedDegree(String),
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
