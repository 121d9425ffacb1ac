use thiserror::Error;

/// Errors produced by the analysis core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is not valid UTF-8: invalid byte at offset {offset}")]
    Decode { offset: usize },

    #[error("{what} requires a non-empty sequence")]
    EmptySequence { what: &'static str },

    #[error("{what} requires at least {need} words, got {got}")]
    TooShort {
        what: &'static str,
        need: usize,
        got: usize,
    },

    #[error("syllable counts must be positive (found {0})")]
    InvalidLength(u64),

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate constant sequence: every word has the same length")]
    DegenerateConstant,

    #[error("lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },

    #[error("length-sequence line {line}: {reason}")]
    LengthFile { line: usize, reason: String },

    #[error("baseline was generated with q = {baseline}, but the text model has q = {model}")]
    BaselineMismatch { model: f64, baseline: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
