use thiserror::Error;

#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("insufficient truncation: {0}")]
    Truncation(String),
    #[error("precision exhausted at {prec} bits: {what}")]
    PrecisionExhausted { prec: u32, what: String },
    #[error("outside certified domain: {0}")]
    Domain(String),
    #[error("unsupported level: {0}")]
    UnsupportedLevel(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
