use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("deleted and contracted sets overlap")]
    OverlappingSets,
    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge {0} is separating")]
    SeparatingEdge(usize),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("oriented matroid has no representation")]
    NoRepresentation,
    #[error("node is not a triangle")]
    NotATriangle,
    #[error("complex is not pure")]
    NotPure,
    #[error("facet order is not a permutation of the facets")]
    BadPermutation,
    #[error("complex is not connected")]
    Disconnected,
    #[error("group element does not map faces to faces")]
    ActionNotSimplicial,
    #[error("unexpected Betti numbers {found:?}, expected {expected:?}")]
    BettiMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("intersection of the endpoints is dependent")]
    IntersectionDependent,
    #[error("subset is not a node of the poset")]
    NotInPoset,
    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthTooLarge { depth: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
