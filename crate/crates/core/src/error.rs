use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),
    #[error("codebook of {codewords} codewords exceeds the brute-force cap of {cap}; use the analytic gain instead")]
    Capacity { codewords: usize, cap: usize },
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("unidentifiable: {0}")]
    Unidentifiable(String),
    #[error("corrupted input: {0}")]
    CorruptedInput(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
