use thiserror::Error;

use crate::complex::{EdgeId, FaceId, VertexId};

/// Errors shared across the crate's operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(VertexId),
    #[error("unknown edge id {0:?}")]
    UnknownEdge(EdgeId),
    #[error("unknown face id {0:?}")]
    UnknownFace(FaceId),
    #[error("morphism domain/codomain mismatch: {0}")]
    DomainMismatch(String),
    #[error("path is not embedded in the complex")]
    PathNotEmbedded,
    #[error("cannot concatenate: end of first path differs from start of second")]
    ConcatMismatch,
    #[error("cycle has an oriented edge occurring more than once")]
    RepeatedOrientedEdge,
    #[error("not a combinatorial surface")]
    NotASurface,
    #[error("not a combinatorial sphere")]
    NotASphere,
    #[error("not a valid arc: {0}")]
    NotAnArc(String),
    #[error("map has no spherical closure: {0}")]
    NoClosure(String),
    #[error("selection is not a connected subcomplex")]
    DisconnectedSelection,
    #[error("selection is not closed under incidence: {0}")]
    SelectionNotClosed(String),
    #[error("operation requires a disc map (exactly one contour)")]
    NotADiscMap,
    #[error("cycle must be nontrivial")]
    TrivialCycle,
    #[error("cycle must be simple")]
    NotSimpleCycle,
    #[error("invalid map data: {0}")]
    InvalidMap(String),
    #[error("cutting cycle does not split the sphere into two face regions")]
    NotSeparating,
    #[error("arc is not incident to any face")]
    ArcNotIncident,
    #[error("face boundary enters an arc without traversing it fully")]
    PartialArcTraversal,
    #[error("invalid arc system: {0}")]
    InvalidArcSystem(String),
    #[error("graph has loops or multiple edges")]
    NotSimpleGraph,
    #[error("operation requires a 1-complex (no faces)")]
    NotAGraph,
    #[error("invalid generator input: {0}")]
    InvalidGenOp(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
