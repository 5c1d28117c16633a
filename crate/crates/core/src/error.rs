use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("distance class k must be at least 1")]
    ZeroDistance,
    #[error("walk vertices at positions {0} and {0}+1 are not adjacent")]
    NotAWalk(usize),
    #[error("walk of length {0} is too short to halve; need at least 2")]
    WalkTooShort(usize),
    #[error("window starting at position {0} is not induced (its ends are equal or adjacent)")]
    WindowNotInduced(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("vertex count must be at least 1")]
    ZeroVertices,
    #[error("vertex count {n} exceeds the enumeration cap of {cap}; pass force to override")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex count {0} exceeds the hard enumeration limit")]
    BeyondHardLimit(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("family order k = {0} must be even and at least 4")]
    FamilyOrder(usize),
    #[error(
        "lower-bound check needs a finite diameter of at least 3 and a finite 2-distance diameter"
    )]
    LowerBoundPrecondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("search needs between 2 and 64 vertices, got {0}")]
    VertexCount(usize),
    #[error("path of length {p2_len} needs {} vertices but only {n} are available", .p2_len + 1)]
    PathTooLong { p2_len: usize, n: usize },
    #[error("shortcut length cap must be at least 1")]
    ShortcutLen,
    #[error("maximum diameter must be at least 1")]
    MaxDiameter,
    #[error("shortcut schema would emit {needed} clauses, above the cap of {cap}")]
    ClauseCap { needed: u128, cap: u64 },
    #[error("empty clause")]
    EmptyClause,
    #[error("literal {lit} out of range for {var_count} variables")]
    LiteralOutOfRange { lit: i64, var_count: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("solver not available: {0}")]
    Missing(String),
    #[error("solver produced malformed output: {0}")]
    Malformed(String),
    #[error("solver failed: {0}")]
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("model leaves adjacency variable {0} unassigned")]
    IncompleteAssignment(u32),
    #[error("model b-literal for pair ({0}, {1}) disagrees with the BFS oracle")]
    EncoderMismatch(usize, usize),
    #[error("solver returned an adjacency pattern that was already blocked")]
    RepeatedModel,
}
