use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("monomial length mismatch: {left} vs {right}")]
    MonomialLength { left: usize, right: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unsupported ideal class: {0}")]
    UnsupportedIdealClass(String),

    #[error("zero module: {0}")]
    ZeroModule(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid tower exponents: source {source_power} < target {target_power}")]
    TowerOrder { source_power: u32, target_power: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
