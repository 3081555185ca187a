use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },

    #[error("non-integer coefficient on a variable at {pos}")]
    NonIntegerCoefficient { pos: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("zero polynomial has identically infinite valuation")]
    ZeroPolynomial,

    #[error("matrix is not unimodular")]
    NonUnimodular,

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for errors raised while reading text input, as opposed to
    /// well-formed input the engine refuses.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::NonIntegerCoefficient { .. }
        )
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}
