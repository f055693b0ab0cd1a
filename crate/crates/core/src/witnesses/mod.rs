//! Few-distance point sets that witness lower bounds, and the projection of
//! vector restrictions on ℤⁿ down to distance restrictions on ℤ.
//!
//! A set S realizing only k distinct distances must be colored rainbow
//! under the array whose every column forbids all k of them, so |S|−1
//! colors never suffice.

mod pointset;
mod qsqrt5;
mod vectors;

pub use pointset::{
    all_distances_array, clique_bound, distance_spectrum, make_witness, CliqueBound, Coordinates,
    Field, FieldValue, PointSet, SpectrumReport, WitnessKind,
};
pub use qsqrt5::QSqrt5;
pub use vectors::{
    verify_vector_coloring, wepsic_lift, wepsic_project, Lift, VectorArray, VectorViolation,
};
