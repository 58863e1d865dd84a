use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision insufficient: {context}")]
    PrecisionInsufficient { context: String },

    #[error("division by a value that may be zero: {context}")]
    DivisionNearZero { context: String },

    #[error("index {index} out of range (available {available})")]
    IndexOutOfRange { index: i64, available: String },

    #[error("elements are not coprime: gcd has norm {gcd_norm}")]
    NotCoprime { gcd_norm: String },

    #[error("unsupported ring d={0}")]
    UnsupportedRing(u32),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("enumeration budget exceeded: {needed} candidates > {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precision(context: impl Into<String>) -> Self {
        Error::PrecisionInsufficient {
            context: context.into(),
        }
    }

    pub fn near_zero(context: impl Into<String>) -> Self {
        Error::DivisionNearZero {
            context: context.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
