//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("monomial ({a},{b}) does not match degree {degree}")]
    NonHomogeneous { a: u32, b: u32, degree: u32 },

    #[error("boundary series undefined: f vanishes at the leading index {index}")]
    ZeroLeadingValue { index: u32 },

    #[error("row {row} violates the cross-row recurrence at column {col}: boundary is inconsistent")]
    InconsistentBoundary { row: u32, col: u32 },

    #[error("step is not invertible: g({i},0) = 0 after gcd reduction")]
    NonInvertibleStep { i: u32 },

    #[error("index ({i},{j}) is outside the built table")]
    OutOfRange { i: u32, j: u32 },

    #[error("pair does not satisfy the cubic-boundary condition required here; use empirical mode")]
    UnsupportedPair,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("insufficient precision: {needed} digits required")]
    InsufficientPrecision { needed: u32 },

    #[error("continued fraction degenerates at depth {depth}: zero denominator")]
    DegenerateCf { depth: usize },

    #[error("search space of {size} candidate polynomials exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("table exceeds the memory budget of {budget} entries")]
    SizeBudget { budget: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
