use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate generator `{name}` at line {line}, column {column}")]
    DuplicateGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("empty generator list")]
    EmptyGenerators,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("relator {relator} references generator index {generator}, but only {count} generators are declared")]
    GeneratorOutOfRange {
        relator: usize,
        generator: usize,
        count: usize,
    },
    #[error(
        "ordering for generator `{generator}` is not a permutation of its {expected} crossings"
    )]
    InvalidOrdering { generator: String, expected: usize },
    #[error("expected {expected} orderings, got {found}")]
    OrderingCount { expected: usize, found: usize },
    #[error("unknown crossing label `{0}`")]
    UnknownCrossing(String),
    #[error("degenerate Whitehead move: {0}")]
    DegenerateMove(String),
    #[error("invalid Whitehead move: {0}")]
    InvalidMove(String),
    #[error("operation requires exactly {expected} generators, presentation has {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("too many generators ({0}); at most 32 are supported")]
    TooManyGenerators(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
