use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is out of range ({expected})")]
    ParameterRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("context depth {0} is out of range (expected 1..=63)")]
    InvalidDepth(usize),

    #[error("malformed stream: {0}")]
    Format(String),

    #[error("compressed stream is truncated")]
    Truncated,

    #[error("encoder was already flushed")]
    AlreadyFlushed,

    #[error("space saving is undefined for an empty original")]
    UndefinedMetric,

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn range(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::ParameterRange {
            name,
            value,
            expected,
        }
    }
}
