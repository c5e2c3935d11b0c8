use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("conditioning event has probability zero for coalition {0:?}")]
    ZeroProbability(Vec<usize>),
    #[error("enumeration guard exceeded: {needed} bits needed, limit {limit}")]
    Guard { needed: u32, limit: u32 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
