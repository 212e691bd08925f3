use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A requested graph does not fit in the fixed 64-vertex representation.
    #[error("size error: {what} needs {needed} vertices, limit is {limit}")]
    Size {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    /// Vertex index out of range for the host graph.
    #[error("index error: vertex {vertex} out of range for graph on {n} vertices")]
    Index { vertex: usize, n: usize },

    /// An operation was invoked beyond its supported input size.
    #[error("capacity error: {op} supports n <= {limit}, got {n}")]
    Capacity {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    /// Malformed graph6 text.
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// A graph6 stream entry failed to parse or violated the requested class.
    #[error("validation error at line {line}: {reason}")]
    Validation { line: usize, reason: String },

    /// Caller broke a documented precondition.
    #[error("contract error: {0}")]
    Contract(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No d-regular graph on n vertices exists because n*d is odd.
    #[error("parity error: n*d must be even, got n={n}, d={d}")]
    Parity { n: usize, d: usize },

    /// A verification suite found a counterexample or an internal identity failed.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
