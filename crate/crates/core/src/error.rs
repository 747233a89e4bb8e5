use thiserror::Error;

use crate::lattice::Vec4;

/// Largest diameter accepted by the closed-form constructors. Orders grow
/// like k^4/2, so this keeps every intermediate comfortably inside `i64`.
pub const MAX_DIAMETER: i64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("diameter k = {0} is out of range (need 2 <= k <= {MAX_DIAMETER})")]
    DiameterOutOfRange(i64),

    #[error("negative ball radius {0}")]
    NegativeRadius(i64),

    #[error("formula `{formula}` does not divide exactly at k = {k}")]
    InexactDivision { formula: &'static str, k: i64 },

    #[error("derived vector v{index} disagrees with its basis combination at k = {k}")]
    DerivedMismatch { index: usize, k: i64 },

    #[error("lattice invariant violated at k = {k}: {what}")]
    Invariant { k: i64, what: String },

    #[error("case tables need k >= {min} for this parity (got k = {k}); use BFS for smaller k")]
    TablesUnavailable { k: i64, min: i64 },

    #[error("stage-1 reduction of {input} did not terminate within {cap} steps")]
    Stage1Stalled { input: Vec4, cap: usize },

    #[error("no case rule matches {point} in orthant v{orthant}")]
    NoMatchingCase { point: Vec4, orthant: usize },

    #[error("rule {rule} moved {point} to {reached}, which is not between 0 and {anchor}")]
    AnchorViolation {
        rule: String,
        point: Vec4,
        reached: Vec4,
        anchor: String,
    },

    #[error("point {0} is outside the reduced box")]
    OutsideBox(Vec4),

    #[error("invalid circulant: {0}")]
    InvalidCirculant(String),

    #[error("rule table line {line}: {msg}")]
    RuleSyntax { line: usize, msg: String },

    #[error("residue {g} is out of range for Z_{n}")]
    ResidueOutOfRange { g: i64, n: i64 },

    #[error("word replay reached {reached}, expected {expected}")]
    ReplayMismatch { reached: i64, expected: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
