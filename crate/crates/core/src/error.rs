use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{op} expects {expected} operand(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("program error: {0}")]
    Program(String),

    #[error("unsupported adder variant `{0}`: no executable truth table")]
    UnsupportedVariant(String),

    #[error("operand {value} does not fit in {width} bits")]
    OperandOverflow { value: u64, width: u32 },

    #[error("step violation: {0}")]
    StepViolation(String),

    #[error("gate {0} is not realizable with the active device parameters (empty voltage window)")]
    NotRealizable(&'static str),

    #[error("image dimensions differ: {0}")]
    DimensionMismatch(String),

    #[error("bad image: {0}")]
    Image(String),

    #[error("netpbm format error in {path}: {msg}")]
    Format { path: PathBuf, msg: String },

    #[error("no input images found in {0}")]
    EmptyDataset(PathBuf),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
