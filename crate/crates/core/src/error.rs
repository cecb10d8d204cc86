use thiserror::Error;

/// Errors raised by the workbench.
///
/// Validation failures carry a witness so callers can report exactly which
/// entry broke the structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry ({row}, {col}) = {value} is out of range for size {size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("empty table: a monoid needs at least one element")]
    Empty,
    #[error("element {identity} is not a two-sided identity (fails against {witness})")]
    BadIdentity { identity: usize, witness: usize },
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("the generating set must be non-empty")]
    EmptyGeneratingSet,
    #[error("{what} of size {size} exceeds the cap {cap}")]
    SizeTooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("operands live over different monoids")]
    MonoidMismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("map is not equivariant at ({element}, {acting})")]
    NotEquivariant { element: usize, acting: usize },
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid congruence filter: {0}")]
    InvalidFilter(String),
    #[error("malformed category: {0}")]
    MalformedCategory(String),
    #[error("oracle violation: {0}")]
    OracleViolation(String),
    #[error("unknown extension system `{0}`")]
    UnknownSystem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
