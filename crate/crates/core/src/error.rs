use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec {spec:?}: {reason}")]
    GroupParse { spec: String, reason: String },

    #[error("group order {got} exceeds the supported maximum {max}")]
    OrderOverflow { got: usize, max: usize },

    #[error("{what} requires order at most {max}, got {got}")]
    CapExceeded {
        what: &'static str,
        max: usize,
        got: usize,
    },

    #[error("expected an abelian group")]
    NotAbelian,

    #[error("element {element} is not an involution")]
    NotInvolution { element: usize },

    #[error("abelian base group must have exponent greater than 2")]
    ExponentTooSmall,

    #[error("set is not a subgroup (not closed under multiplication/inverse or missing identity)")]
    NotSubgroup,

    #[error("set is not inverse-closed")]
    NotInverseClosed,

    #[error("set-matrix flag mismatch: {0}")]
    SetMatrixFlags(&'static str),

    #[error("generator degree {got} does not match expected degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("partition is not equitable: vertices {u} and {v} of one block have different neighbour counts in another block")]
    NotEquitable { u: usize, v: usize },

    #[error("block partition invalid: {0}")]
    BadPartition(String),

    #[error("family index space has {bits} bits; exhaustive runs are capped at {cap} (use Monte Carlo or the override flag)")]
    ExhaustiveTooLarge { bits: u64, cap: u64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("inequality boundary not bracketed below 2^{max_log2}")]
    BoundaryNotBracketed { max_log2: u32 },

    #[error("group is not in the required class: {0}")]
    ClassMismatch(String),

    #[error("predicate {predicate} is not valid for family {family}")]
    PredicateFamilyMismatch {
        predicate: &'static str,
        family: &'static str,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
