use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid logic: {0}")]
    InvalidLogic(String),
    #[error("logic too large: {0}")]
    TooLarge(String),
    #[error("no conditional data for event {event} at vertex {vertex}")]
    MissingConditional { event: String, vertex: usize },
    #[error("{0}")]
    Precondition(String),
}
