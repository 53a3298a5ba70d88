use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex set is empty")]
    EmptySubset,
    #[error("vertex set does not induce a connected subgraph")]
    NotConnected,
    #[error("graph needs at least two vertices")]
    DegenerateGraph,
    #[error("path endpoints must differ")]
    IdenticalEndpoints,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("interval graph is disconnected")]
    Disconnected,
    #[error("wanted {wanted} disjoint paths, found only {achieved}")]
    InsufficientConnectivity { wanted: usize, achieved: usize },
    #[error("no unused neighbor of {side} left for augmentation")]
    AugmentationExhausted { side: &'static str },
    #[error("vertex {0} is adjacent to none of the sets")]
    NotDominating(VertexId),
    #[error("terminal {0} is not on the first tree")]
    TerminalsNotOnFirstTree(VertexId),
    #[error("invalid CDS input: {0}")]
    InvalidCdsInput(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("{n} vertices exceeds the oracle limit of {limit}")]
    TooLargeForOracle { n: usize, limit: usize },
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
}

impl Error {
    /// Stable machine-readable code, used as the second token of `ERROR` lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySubset => "empty-subset",
            Error::NotConnected => "not-connected",
            Error::DegenerateGraph => "degenerate-graph",
            Error::IdenticalEndpoints => "identical-endpoints",
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::SelfLoop(_) => "self-loop",
            Error::DuplicateEdge(..) => "duplicate-edge",
            Error::Disconnected => "disconnected",
            Error::InsufficientConnectivity { .. } => "insufficient-connectivity",
            Error::AugmentationExhausted { .. } => "augmentation-exhausted",
            Error::NotDominating(_) => "not-dominating",
            Error::TerminalsNotOnFirstTree(_) => "terminals-not-on-first-tree",
            Error::InvalidCdsInput(_) => "invalid-cds-input",
            Error::InvalidInstance(_) => "invalid-instance",
            Error::InvalidModel(_) => "invalid-model",
            Error::TooLargeForOracle { .. } => "too-large-for-oracle",
            Error::GenerationFailed { .. } => "generation-failed",
            Error::InvariantBroken(_) => "invariant-broken",
        }
    }
}
