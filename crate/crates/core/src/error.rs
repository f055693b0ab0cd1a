use thiserror::Error;

use crate::lattice::{Space, TokenKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nonpositive distance")]
    NonpositiveDistance,
    #[error("{kind} token is incompatible with space {space}")]
    IncompatibleToken { kind: TokenKind, space: Space },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unsupported format {found:?} (expected {expected:?})")]
    UnsupportedFormat {
        found: String,
        expected: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty window: lower corner exceeds upper corner")]
    EmptyWindow,
    #[error("point {0:?} lies outside the window")]
    PointOutsideWindow(Vec<i64>),
    #[error("array space {array} does not match window space {window}")]
    SpaceMismatch { array: Space, window: Space },
    #[error("coloring has {found} entries but the window has {expected} points")]
    CoverageGap { expected: usize, found: usize },
    #[error("color {color} outside 1..={m}")]
    ColorOutOfRange { color: u32, m: usize },
    #[error("{0} must be positive")]
    NonpositiveParameter(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-integer distance token {0}")]
    NonIntegerToken(String),
    #[error("functional is orthogonal to restricted vector {0:?}")]
    DegenerateFunctional(Vec<i64>),
    #[error("point set needs at least two points")]
    SingletonPointSet,
    #[error("arithmetic overflow")]
    Overflow,
}
