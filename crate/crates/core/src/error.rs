use thiserror::Error;

use crate::construction::ConstructionKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is even; twisted cubes exist only for odd n")]
    EvenDimension(u32),

    #[error("dimension {0} is out of range (supported: odd 1..={max})", max = crate::topology::MAX_DIMENSION)]
    DimensionOutOfRange(u32),

    #[error("label {label} is out of range for TQ_{n} (must be < 2^{n})")]
    LabelOutOfRange { label: u64, n: u32 },

    #[error("bit index {index} is out of range for TQ_{n}")]
    BitIndexOutOfRange { index: u32, n: u32 },

    #[error("TQ_{n} has no subcubes; the top-level split needs n >= 3")]
    NoSubcubes { n: u32 },

    #[error("TQ_{n} exceeds the capacity cap of n <= {cap}")]
    Capacity { n: u32, cap: u32 },

    #[error(
        "TQ_3 has no two edge-disjoint Hamiltonian cycles: each node is incident to only three \
         edges, but two edge-disjoint cycles through it would need four"
    )]
    EdhNonexistent,

    #[error("{kind} construction is not defined for n = {n} (requires odd n >= {min})")]
    UnsupportedDimension {
        n: u32,
        kind: ConstructionKind,
        min: u32,
    },

    #[error("{left:b} and {right:b} are not adjacent in TQ_{n}")]
    Junction { left: u64, right: u64, n: u32 },

    #[error("node {label:b} appears more than once")]
    Overlap { label: u64 },

    #[error("paths belong to different dimensions ({left} vs {right})")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("a path must contain at least one node")]
    EmptyPath,

    #[error("a cycle needs at least 3 nodes, got {0}")]
    CycleTooShort(usize),

    #[error("internal construction error: {0}")]
    Construction(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid cycle document: {0}")]
    Document(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported oracle request: {0}")]
    Oracle(String),
}

impl Error {
    /// True for errors caused by a size cap rather than bad arguments.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
