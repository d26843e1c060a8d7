use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet error: {0}")]
    Alphabet(String),
    #[error("singular map: {0}")]
    SingularMap(String),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("split error: {0}")]
    Split(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("rank error: {0}")]
    Rank(String),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("form error: {0}")]
    Form(String),
    #[error("family error: {0}")]
    Family(String),
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource cap: {0}")]
    ResourceCap(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
