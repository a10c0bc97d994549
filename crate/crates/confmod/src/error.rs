use thiserror::Error;

/// Errors produced by the kernel and its front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element has no leading term")]
    ZeroElement,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("relation is not monic: {0}")]
    NonMonicRelation(String),
    #[error("relation set is not D-free: {0}")]
    NotDFree(String),
    #[error("delta must be 0 or 1, got {0}")]
    InvalidDelta(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("io error: {0}")]
    Io(String),
}

/// A parse failure with its byte offset and the token set that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: found {found}, expected {}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(offset: usize, found: impl Into<String>, expected: &[&str]) -> Self {
        ParseError {
            offset,
            found: found.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}
