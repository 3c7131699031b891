use std::time::Duration;

use thiserror::Error;

use crate::poset::IncPair;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation closes a cycle through `{0}`")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    UnknownIndex(usize),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("extension {extension} is not a permutation of the {expected} elements (has {found})")]
    ExtensionMismatch {
        extension: usize,
        expected: usize,
        found: usize,
    },
    #[error("a realizer needs at least one linear extension")]
    EmptyRealizer,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("cover graph is disconnected")]
    Disconnected,
    #[error("element {element} is not in block {block}")]
    NotInBlock { element: usize, block: usize },
    #[error("block {0} is not a convex subposet")]
    NotConvex(usize),
    #[error("block order violates the labeling property at position {0}")]
    BadLabeling(usize),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReversalError {
    #[error("candidate set contains an alternating cycle of length {}", .0.len())]
    NotReversible(Vec<IncPair>),
    #[error("pair ({}, {}) is not an incomparable pair", .0.x, .0.y)]
    NotIncomparable(IncPair),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("search at level {level} exceeded {budget:?}; dimension is at least {lower_bound}")]
    Timeout {
        level: usize,
        budget: Duration,
        lower_bound: usize,
    },
    #[error("dimension exceeds the maximum of {0}")]
    ExceedsMax(usize),
    #[error("brute force is limited to {limit} elements, got {n}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MergeError {
    #[error("merge needs exactly one shared element, found {0}")]
    SharedElements(usize),
    #[error("merge point is missing from one of the extensions")]
    MissingMergePoint,
    #[error("realizer for block {block} is invalid: {reason}")]
    InvalidBlockRealizer { block: usize, reason: String },
    #[error("block property fails for extension {extension} on block {block}")]
    BlockProperty { extension: usize, block: usize },
    #[error("tail of {anchor} relative to block {block} is not an interval in extension {extension}")]
    IntervalProperty {
        extension: usize,
        anchor: usize,
        block: usize,
    },
    #[error("pair ({}, {}) violates the residual-pair claims: {reason}", .pair.x, .pair.y)]
    ClaimViolation { pair: IncPair, reason: String },
    #[error("final family is not a realizer")]
    Unsound,
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Reversal(#[from] ReversalError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("{family}: parameter {param} = {value} is below the minimum {min}")]
    BelowMinimum {
        family: &'static str,
        param: &'static str,
        value: usize,
        min: usize,
    },
    #[error("{family}: {size} elements exceeds the size limit {limit}")]
    TooLarge {
        family: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("embedded witness check failed: {0}")]
    WitnessCheck(String),
}
