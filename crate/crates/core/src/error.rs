use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {requested} exceeds the configured limit {limit}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("invalid RG-word: {0}")]
    InvalidWord(String),
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("invalid rook placement: {0}")]
    InvalidPlacement(String),
    #[error("{0} is not allowable")]
    NotAllowable(String),
    #[error("involution undefined: {0}")]
    InvolutionDomain(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid Boolean decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("boundary map does not square to zero at {0}")]
    BoundaryNotNilpotent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
