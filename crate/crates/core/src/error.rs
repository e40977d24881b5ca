use thiserror::Error;

use crate::hypergraph::VertexSet;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed vertex subset: {0}")]
    MalformedSubset(String),

    #[error("edge rank {rank} out of range (must be < {max})")]
    RankOutOfRange { rank: u64, max: u64 },

    /// No block satisfies the requested adjacency condition.
    #[error("no qualifying block found")]
    BlockNotFound,

    /// Some set exhausted every candidate core without a qualifying index.
    /// Surfaced as a construction failure for the sample, never a panic.
    #[error("no core found for set {set}")]
    NoCoreFound { set: VertexSet },

    /// An edge required by the construction is absent from the host; this
    /// signals a bookkeeping bug, not bad luck.
    #[error("integrity violation: {0}")]
    IntegrityViolation(String),

    #[error("host has {edges} edges, exceeding the oracle budget of {budget}")]
    TooLarge { edges: usize, budget: usize },

    #[error("infeasible construction parameters: {0}")]
    Infeasible(String),

    /// The structured activation order could not activate an edge.
    #[error("proof trace failed at edge {edge}: {detail}")]
    TraceFailed { edge: VertexSet, detail: String },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
