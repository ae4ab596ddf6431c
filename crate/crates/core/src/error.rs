use std::path::PathBuf;

use thiserror::Error;

use crate::verify::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("dimension {dim} out of range [{min}, {max}]")]
    DimensionOutOfRange { dim: u32, min: u32, max: u32 },

    #[error("value {value} does not fit in {dim} bits")]
    ValueOutOfRange { value: u64, dim: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The mathematical answer is "none": GF(2)^3 and GF(2)^4 admit no
    /// ternary permutation.
    #[error("no ternary permutation exists for n={dim}: for n >= 2 one exists if and only if n is neither 3 nor 4")]
    Nonexistent { dim: u32 },

    #[error("input sequence is not a ternary permutation: {0}")]
    InvalidSequence(VerificationReport),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node budget of {budget} exhausted after {nodes} nodes")]
    BudgetExhausted { budget: u64, nodes: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
