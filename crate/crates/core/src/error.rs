use thiserror::Error;

/// Errors surfaced by construction, parsing and the few partial operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a quasi-poset on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("character is not invertible: its value on the single-class quasi-poset with {n} vertices is zero")]
    NotInvertible { n: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("not a packed word: {0}")]
    NotPacked(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
