use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("symbol `{0}` is not part of the signature")]
    SymbolAbsent(&'static str),

    #[error("element {element} does not belong to {algebra}")]
    ForeignElement { element: String, algebra: String },

    #[error("environment has {given} values but the term uses x{needed}")]
    ShortEnvironment { given: usize, needed: usize },

    #[error("strategy mismatch: {0}")]
    StrategyMismatch(String),

    #[error("signature mismatch between {0} and {1}")]
    SignatureMismatch(String, String),

    #[error("unsupported on symbolic carrier {0}")]
    Symbolic(String),

    #[error("{algebra} is not certified as {required}")]
    NotCertified { algebra: String, required: String },

    #[error("invalid algebra table: {0}")]
    InvalidTable(String),

    #[error("not a filter: {0}")]
    NotAFilter(String),

    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("filter is not proper")]
    NotProper,

    #[error("closure violation: {0}")]
    ClosureViolation(String),

    #[error("unknown constructor `{0}`")]
    UnknownConstructor(String),

    #[error("constructor `{name}` expects {expected}, got {got}")]
    Arity {
        name: String,
        expected: String,
        got: String,
    },

    #[error("{0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
