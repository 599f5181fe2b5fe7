use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("bad decoration: {0}")]
    BadDecoration(String),
    #[error("unsupported pushout: {0}")]
    UnsupportedPushout(String),
    #[error("invalid 2-category: {0}")]
    Invalid(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("functor does not preserve markings: {0}")]
    NotMarkingPreserving(String),
    #[error("unknown object: {0}")]
    UnknownObject(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("not a generator pushout: {0}")]
    NotAGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
