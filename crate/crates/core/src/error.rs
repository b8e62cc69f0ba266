use thiserror::Error;

/// Errors produced by code construction, the codecs and the container format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty distribution")]
    EmptyDistribution,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("length mismatch: {left} lengths vs {right} counts")]
    SizeMismatch { left: usize, right: usize },
    #[error("infeasible length limit {limit} for {symbols} symbols")]
    InfeasibleLimit { limit: u32, symbols: usize },
    #[error("lengths violate the Kraft inequality")]
    KraftViolation,
    #[error("codeword length {0} exceeds the 64-bit window")]
    LengthTooLarge(u32),
    #[error("epsilon out of range (0, 1/2)")]
    EpsilonOutOfRange,
    #[error("epsilon too small: 1/epsilon must not exceed 2^20")]
    EpsilonTooSmall,
    #[error("c must be greater than 1")]
    FactorOutOfRange,
    #[error("index {index} out of range 1..={len}")]
    OutOfRange { index: u64, len: u64 },
    #[error("symbol {0} has no codeword")]
    UnknownSymbol(usize),
    #[error("value {value} does not fit in {len} bits")]
    ValueTooWide { value: u64, len: u32 },
    #[error("not a PFXC container")]
    BadMagic,
    #[error("unsupported container version {0}")]
    BadVersion(u8),
    #[error("truncated payload")]
    Truncated,
    #[error("corrupt codeword in stream")]
    CorruptCodeword,
    #[error("corrupt model: {0}")]
    CorruptModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
