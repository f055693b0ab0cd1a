//! Spaces, distance tokens, restriction arrays, lattice windows and colorings.
//!
//! Everything here is exact: distances are compared as integers (squared
//! for Euclidean lattices of dimension two and up) or by cross-multiplying
//! rational tokens. No floating point enters this module.

mod array;
mod space;
mod window;

pub use array::RestrictionArray;
pub use space::{shell_offsets, DistanceToken, Metric, Space, TokenKind};
pub use window::{neighbors_at, Coloring, PeriodicColoring, Point, Window};
