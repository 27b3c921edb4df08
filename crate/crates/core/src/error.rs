use thiserror::Error;

/// Everything that can go wrong inside the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: String },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("exponent {exponent} is not below the bound {bound}")]
    Bound { exponent: String, bound: String },
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("element is not in the order-2^{k} subgroup")]
    NotInSubgroup { k: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("recurrence polynomial does not split into distinct subgroup roots")]
    NonSplit,
    #[error("duplicate root in Vandermonde system")]
    DuplicateRoot,
    #[error("recovered exponent {exponent} is not below the degree bound {bound}")]
    ExponentOutOfRange { exponent: String, bound: String },
    #[error("recovered coefficient exceeds the height bound {0}")]
    HeightBound(String),
    #[error("black box failed: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
