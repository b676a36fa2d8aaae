use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size cap exceeded: {what} is {value}, cap is {cap}")]
    SizeCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("column {column} has three pairwise distinct letters")]
    PatternViolation { column: usize },

    #[error("invalid stabiliser group: {0}")]
    InvalidGroup(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("group is not maximal: rank {rank} on {n} qubits")]
    NotMaximal { rank: usize, n: usize },

    #[error("invalid local Clifford frame at site {site}: {reason}")]
    InvalidFrame { site: usize, reason: &'static str },

    #[error("invalid empirical model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::SizeCap { what, value, cap })
    } else {
        Ok(())
    }
}
