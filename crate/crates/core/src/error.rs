use thiserror::Error;

/// Errors raised by graph ingestion, representation building and BFS.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: vertex id {id} out of range (limit {limit})")]
    VertexRange { line: usize, id: u64, limit: u64 },

    #[error("edge ({u}, {v}) out of range for n = {n}")]
    EdgeRange { u: u64, v: u64, n: usize },

    #[error("edge ({u}, {v}) has no reverse edge in the input")]
    Asymmetric { u: u32, v: u32 },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("header declares {declared} entries but {found} were read")]
    EntryCount { declared: usize, found: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("root {root} out of range for n = {n}")]
    RootRange { root: usize, n: usize },

    #[error("vector length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("distance vector is inconsistent at vertex {vertex}: {reason}")]
    InconsistentDistances { vertex: usize, reason: String },

    #[error("BFS did not converge within {iterations} iterations")]
    NotConverged {
        iterations: usize,
        /// Distances reached so far, in original vertex numbering.
        partial_distances: Vec<u32>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
