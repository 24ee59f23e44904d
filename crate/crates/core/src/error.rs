use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("the language is finite")]
    FiniteLanguage,
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("UnknownSymbol: {0}")]
    UnknownSymbol(String),
    #[error("word is not in the language")]
    NotInLanguage,
    #[error("language contains ill-padded words")]
    IllPadded,
    #[error("expected a unary tuple alphabet over a single symbol")]
    NotUnary,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("invalid Y-set: {0}")]
    InvalidYSet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
