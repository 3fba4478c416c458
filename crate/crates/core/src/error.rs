use thiserror::Error;

use crate::expr::ParseError;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero quaternion has no inverse")]
    ZeroInverse,

    #[error("axis index {0} is out of range (expected 1..=4)")]
    AxisOutOfRange(usize),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A function was evaluated outside its domain.
///
/// `offset` is the byte offset of the failing node in the source text, when
/// the expression came from the parser.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{op} is undefined at {value}{}", offset.map(|o| format!(" (offset {o})")).unwrap_or_default())]
pub struct DomainError {
    pub op: &'static str,
    pub value: f64,
    pub offset: Option<usize>,
}

impl DomainError {
    pub fn new(op: &'static str, value: f64) -> Self {
        Self {
            op,
            value,
            offset: None,
        }
    }

    pub(crate) fn at(mut self, offset: Option<usize>) -> Self {
        if self.offset.is_none() {
            self.offset = offset;
        }
        self
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
