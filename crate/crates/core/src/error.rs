use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed arguments or inputs violating a documented precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A chordal-graph routine received a graph that is not chordal.
    #[error("graph is not chordal")]
    NotChordal,

    /// An intervention larger than the simulator's size bound.
    #[error("intervention of size {size} exceeds bound k = {bound}")]
    SizeBound { size: usize, bound: usize },

    /// A brute-force routine refused to run because its guard was exceeded.
    #[error("resource guard exceeded: {0}")]
    Resource(String),

    /// An internal invariant failed; indicates a bug in view maintenance.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// Instance text could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
