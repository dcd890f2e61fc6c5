use thiserror::Error;

use crate::graph::Colour;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad order {0}: vertex count must be a positive multiple of 4")]
    BadOrder(usize),
    #[error("incomplete colouring: {0}")]
    Incomplete(String),
    #[error("unbalanced colouring: {black} black vs {red} red edges")]
    Unbalanced { black: usize, red: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("vertex sets are not disjoint (shared vertex {0})")]
    NotDisjoint(usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("({0},{1}) is not an edge of the matching")]
    NotMatchingEdges(usize, usize),
    #[error("edge ({u},{v}) is {found:?}, expected {expected:?}")]
    WrongColours {
        u: usize,
        v: usize,
        expected: Colour,
        found: Colour,
    },
    #[error("matching is already balanced; nothing to step")]
    AlreadyBalanced,
    #[error("order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("black quota exceeded: clique needs {needed} edges, quota is {quota}")]
    QuotaExceeded { needed: usize, quota: usize },
    #[error("odd order {0}: no perfect matching")]
    OddOrder(usize),
    #[error("{edges} edges cannot be split evenly into {k} colours")]
    IndivisibleQuota { edges: usize, k: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violation: {claim}\n--- instance ---\n{instance}--- matching ---\n{matching}")]
    InvariantViolation {
        claim: String,
        instance: String,
        matching: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
