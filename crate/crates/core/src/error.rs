use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants that describe internal inconsistencies (`DivisionRemainder`,
/// `SingularPairing`, `NoSolution`, `Inconsistent`) indicate a bug in a
/// presentation or an algorithm rather than bad user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),

    #[error("{what} out of range: {value} (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("invalid simple root index {index} for rank {rank}")]
    InvalidRootIndex { index: usize, rank: usize },

    #[error("parabolic subset {inner} is not contained in {outer}")]
    NotSubset { inner: String, outer: String },

    #[error("polynomial {0} is not invariant under the parabolic Weyl subgroup")]
    NotInvariant(String),

    #[error("presentations are incompatible: {0}")]
    PresentationMismatch(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exact division left remainder {0}")]
    DivisionRemainder(String),

    #[error("pairing matrix in degrees ({0}, {1}) is singular")]
    SingularPairing(usize, usize),

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
