use thiserror::Error;

/// Errors raised by the quiver, enumeration and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse quiver spec: unexpected `{token}` ({reason})")]
    Parse { token: String, reason: String },

    #[error("not a Dynkin quiver of type A or D4: {0}")]
    NotDynkin(String),

    #[error("vertex {vertex} is not a vertex of a quiver with {n} vertices")]
    NoSuchVertex { vertex: usize, n: usize },

    #[error("quiver is disconnected; Coxeter number is only defined per component")]
    Disconnected,

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("invalid interval [{a}, {b}]: {reason}")]
    InvalidInterval { a: usize, b: usize, reason: String },

    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),

    #[error("reflection at vertex {0} annihilates the simple representation there")]
    ReflectsSimple(usize),

    #[error("member {0} is not in the perpendicular category")]
    NotAMember(usize),

    #[error("perpendicular block with {members} members is not of type A")]
    NotTypeA { members: usize },

    #[error("unclassifiable perpendicular block with {members} members")]
    Classification { members: usize },

    #[error("sequence length {len} out of range 0..={rank}")]
    LengthOutOfRange { len: usize, rank: usize },

    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("catalog of {0} indecomposables exceeds the supported maximum of 128")]
    CatalogTooLarge(usize),

    #[error("{what} = {value} exceeds the desk-scale limit {limit} (use --force to override)")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("inconsistent partition {parts:?} for h = {h}")]
    InconsistentPartition { h: usize, parts: Vec<usize> },

    #[error("polynomial arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),

    #[error("internal linear algebra error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
