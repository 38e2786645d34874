use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n={n} out of range (0..={max})")]
    InvalidDimension { n: u32, max: u32 },

    #[error("weight k={k} out of range for n={n}")]
    InvalidWeight { n: u32, k: u32 },

    #[error("pair ({i},{j}) invalid for n={n}; need 1 <= i < j <= n")]
    InvalidPair { i: u32, j: u32, n: u32 },

    #[error("point {bits:#b} has bits outside dimension n={n}")]
    InvalidPoint { bits: u64, n: u32 },

    #[error("duplicate point {bits:#b}")]
    DuplicatePoint { bits: u64 },

    #[error("point set is empty")]
    EmptySet,

    #[error("table length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("table length {len} does not match 2^{n}")]
    LengthMismatch { len: usize, n: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("{op} supports n <= {max}, got n={n}")]
    DimensionTooLarge { op: &'static str, n: u32, max: u32 },

    #[error("{op} needs n >= {min}, got n={n}")]
    DimensionTooSmall { op: &'static str, n: u32, min: u32 },

    #[error("point {bits:#b} is not a canonical coset representative for pair ({i},{j})")]
    NonCanonical { bits: u64, i: u32, j: u32 },

    #[error("expected {expected} normalization")]
    WrongNormalization { expected: &'static str },

    #[error("function vanishes on the support")]
    ZeroAfterRestriction,

    #[error("exact integer overflow in {op}")]
    Overflow { op: &'static str },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
