use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("vertex `{vertex}`: guessness must be < hatness (h={hat}, g={guess})")]
    GuessRange {
        vertex: String,
        hat: u32,
        guess: u32,
    },
    #[error(
        "vertex `{vertex}`: hatness {hat} exceeds the supported maximum of 64 for strategy tables"
    )]
    HatTooLarge { vertex: String, hat: u32 },
    #[error("malformed strategy: {0}")]
    Strategy(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
