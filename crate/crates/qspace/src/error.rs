//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by field construction, subspace algebra, constructions,
/// bounds, and the projections solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not irreducible over GF({p})")]
    NotIrreducible { p: u32 },
    #[error("modulus is irreducible but not primitive: x has order {order} < {group_order}")]
    NotPrimitive { order: u64, group_order: u64 },
    #[error("no built-in primitive polynomial for GF({p}^{m})")]
    NoDefaultModulus { p: u32, m: u32 },
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u64 },
    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("discrete log of zero is undefined")]
    LogOfZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("Grassmannian distance requires equal dimensions ({left} vs {right})")]
    UnequalDimensions { left: usize, right: usize },
    #[error("minimum distance needs at least two codewords")]
    TooFewWords,
    #[error("cap exceeded: {task} needs {needed}, cap is {cap}")]
    CapExceeded {
        task: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("matrices have different shapes")]
    ShapeMismatch,
    #[error("rank distance {delta} out of range 1..={max}")]
    BadDelta { delta: u32, max: u32 },
    #[error("skeleton minimum {kind} distance {actual} below required {required}")]
    SkeletonDistanceTooSmall {
        kind: &'static str,
        actual: u32,
        required: u32,
    },
    #[error("skeleton does not fit the requested metric: {0}")]
    MetricMismatch(String),
    #[error("unit vector e_{0} lies inside the subspace; cannot puncture")]
    UnitVectorInside(usize),
    #[error("Q is not a hyperplane (dim {dim}, ambient {n})")]
    BadHyperplane { dim: usize, n: usize },
    #[error("v lies in Q; puncturing requires v outside the hyperplane")]
    VInQ,
    #[error("{k} does not divide {n}")]
    NotDivisible { k: u32, n: u32 },
    #[error("generator exponent set is not additively closed (not a subspace)")]
    NotASubspace,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("codeword dimension {dim} below cover dimension {t}")]
    DimTooSmall { dim: usize, t: usize },
    #[error("code is not constant-dimension")]
    NotConstantDimension,
    #[error("identifying vector has weight zero")]
    ZeroWeight,
    #[error("inconsistent pins: {0}")]
    InconsistentPins(String),
    #[error("parse error at {context}: {message}")]
    ParseError { context: String, message: String },
    #[error("constructed object failed verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
