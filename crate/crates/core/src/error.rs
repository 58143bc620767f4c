use thiserror::Error;

/// Errors raised by the library operations.
///
/// Facet indices in messages are 1-based (`F1`, `F2`, ...) to match how complexes are
/// written by hand; the API itself uses 0-based facet indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be between 1 and {max}, got {got}")]
    InvalidVertexCount { got: usize, max: usize },

    #[error("facet #{index} is empty")]
    EmptyFacet { index: usize },

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} lies in no facet")]
    UncoveredVertex(usize),

    #[error("complex is not pure")]
    NotPure,

    #[error("face {0} is not a face of the complex")]
    FaceNotInComplex(String),

    #[error("facet index F{} out of range (complex has {count} facets)", .index + 1)]
    FacetIndexOutOfRange { index: usize, count: usize },

    #[error("multiplicity vector does not match the complex: {0}")]
    AlphaDomainMismatch(String),

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("root {0} is not a node of the graph")]
    RootNotFound(String),

    #[error("complex is not a quasi-tree")]
    NotQuasiTree,

    #[error("graph is not a relation tree of the complex")]
    NotRelationTree,

    #[error("restricted relation tree for vertex {0} is not a tree")]
    RestrictionNotTree(usize),

    #[error("order is not a permutation of the facet indices")]
    NotPermutation,

    #[error("boundary dimension {q} outside -1..={dim}")]
    DimensionOutOfRange { q: i32, dim: i32 },

    #[error("operation undefined on the void complex")]
    VoidComplex,

    #[error("facet graph is not a tree")]
    NotTreeFacetGraph,

    #[error("complex is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("complex is not shellable")]
    NotShellable,

    #[error("ideals live in different polynomial rings ({0} vs {1} variables)")]
    AmbientMismatch(usize, usize),

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u32),

    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
