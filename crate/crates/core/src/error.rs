use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("words live over different alphabets")]
    AlphabetMismatch,
    #[error("word {0:?} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("operation requires a finite-index subgroup")]
    InfiniteIndex,
    #[error("invalid kernel map: {0}")]
    InvalidKernel(String),
    #[error("series truncation degrees differ ({0} vs {1})")]
    CapMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid subgroup description: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
