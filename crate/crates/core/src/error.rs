use thiserror::Error;

use crate::group::Family;

/// Errors raised while realizing a group or handling its elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unsupported rank {rank} for type {family}")]
    UnsupportedRank { family: Family, rank: usize },

    #[error("group {name} has {order} elements, above the cap of {cap}")]
    TooLarge {
        name: String,
        order: u128,
        cap: u128,
    },

    #[error("window {window:?} does not belong to {name}: {reason}")]
    InvalidElement {
        name: String,
        window: Vec<i64>,
        reason: &'static str,
    },

    #[error("cannot parse element {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown family {0:?} (expected A, B or D)")]
    UnknownFamily(String),
}

/// Errors raised by Bruhat order queries and interval construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error("interval requires u < w, but {u} is not strictly below {w}")]
    NotBelow { u: String, w: String },

    #[error("element {0} is not in the interval")]
    NotInInterval(String),
}

/// Errors raised by the graded poset algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover ({0}, {1}) refers to an element outside the poset")]
    OutOfRange(usize, usize),

    #[error("cover relation contains a cycle")]
    Cyclic,

    #[error("poset is not graded: cover ({0}, {1}) skips a rank")]
    NotGraded(usize, usize),

    #[error("malformed matching: {0}")]
    MalformedMatching(String),

    #[error("cannot parse edge list: {0}")]
    Parse(String),
}

/// Errors raised by the smoothness predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothnessError {
    #[error("single-degree smoothness test requires type A, got type {0}")]
    NotTypeA(Family),
}

/// Errors raised by conjecture scans.
#[derive(Debug, Error)]
pub enum ScanError {
    #[error("scan {scan} does not apply to type {family}: {reason}")]
    WrongType {
        scan: &'static str,
        family: Family,
        reason: &'static str,
    },

    #[error("checkpoint is corrupt or does not match this scan: {0}")]
    Resume(String),

    #[error("checkpoint I/O failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("single-degree and full smoothness tests disagree on [{u}, {w}]")]
    CrossCheck { u: String, w: String },

    #[error(transparent)]
    Group(#[from] GroupError),
}
