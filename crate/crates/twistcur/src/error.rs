use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. `IdentityViolation` is special: it marks a failure
/// of an exact identity that holds for every valid action, i.e. an internal
/// bug or corrupted input, and the CLI maps it to exit code 1 rather than 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: left operand lives in Q(zeta_{left}), right in Q(zeta_{right})")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid conductor {0}: must be a positive integer")]
    BadConductor(u64),

    #[error("no {order}-th root of unity in Q(zeta_{conductor})")]
    RootNotInField { order: u64, conductor: u64 },

    #[error("cannot parse scalar {text:?} at byte {pos}: {reason}")]
    ScalarParse {
        text: String,
        pos: usize,
        reason: String,
    },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("subspace is not an ideal: {context}")]
    NotAnIdeal { context: String },

    #[error("subspace is not closed under the bracket: {context}")]
    NotBracketClosed { context: String },

    #[error("not a Lie algebra: {context}")]
    InvalidStructure { context: String },

    #[error("sl(n) requires n >= 2, got {0}")]
    BadRank(usize),

    #[error("generator {index} is not a Lie algebra automorphism: bracket of basis pair ({i}, {j}) is not preserved")]
    NotAutomorphism { index: usize, i: usize, j: usize },

    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },

    #[error("group closure exceeded the cap of {cap} elements; the generated group is not finite within bounds")]
    GroupCapExceeded { cap: usize },

    #[error("group element {index} does not permute the point ideals coherently")]
    IncoherentPointAction { index: usize },

    #[error("invalid point index {point}: must be in 1..={count}")]
    BadPoint { point: usize, count: usize },

    #[error("points {a} and {b} lie in the same orbit")]
    SameOrbit { a: usize, b: usize },

    #[error("component representation does not live over the isotropy algebra at point {point}")]
    WrongIsotropyAlgebra { point: usize },

    #[error("character does not vanish on the derived subalgebra")]
    InvalidCharacter,

    #[error("representation is not verified irreducible; refusing isomorphism test")]
    NotIrreducible,

    #[error("section is not invariant under the group action")]
    SectionNotInvariant,

    #[error("contraction of ideal {index} does not match the prescribed maximal ideal")]
    ContractionMismatch { index: usize },

    #[error("quotient by ideal {index} is not a simple Lie algebra")]
    NotSimpleQuotient { index: usize },

    #[error("exact identity violated (internal bug): {context}")]
    IdentityViolation { context: String },

    #[error("spec error at {path}: {reason}")]
    Spec { path: String, reason: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
