use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("invalid pathograph: {0}")]
    Invalid(String),
    #[error("pathograph has rungs")]
    HasRungs,
    #[error("ill-formed determination string: {0}")]
    IllFormed(String),
    #[error("not a realization: {0}")]
    NotRealization(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("automata over different alphabets")]
    AlphabetMismatch,
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("regex error at position {pos}: {msg}")]
    Regex { pos: usize, msg: String },
    #[error("family is not closed: {0}")]
    NotClosed(String),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
