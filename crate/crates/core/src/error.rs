use thiserror::Error;

/// Errors raised by the code constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the zero code (k = 0) is not supported")]
    Degenerate,

    #[error("code is not self-dual")]
    NotSelfDual,

    #[error("code is doubly even; the operation needs a singly even code")]
    DoublyEven,

    #[error("vector has odd weight")]
    OddWeight,

    #[error("vector has even weight; the extension needs an odd-weight vector")]
    EvenWeight,

    #[error("vector lies in the code, so it does not define a neighbor")]
    NotANeighbor,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("enumeration budget exceeded: {0}")]
    TooLarge(String),

    #[error("cannot classify weight enumerator: {0}")]
    Unclassifiable(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
