//! Solvers and certificates for distance-restricted colorings of lattices.
//!
//! A k×m restriction array assigns each of m colors up to k forbidden
//! distances; a D-coloring never puts two points of color j at a distance
//! forbidden for j. This crate decides D-colorability of finite lattice
//! windows exactly, certifies colorings of ℤ by periodic residue maps,
//! searches stochastically by resampling, and reproduces the classical
//! lower-bound witnesses (few-distance point sets) and upper-bound formulas.
//!
//! A SAT answer on a lattice window says nothing about the full space; an
//! UNSAT answer holds for every superset of the window.

pub mod cli;
pub mod error;
pub mod format;
pub mod lattice;
pub mod numbounds;
pub mod solver;
pub mod stochastic;
pub mod witnesses;

pub use error::{Error, Result};
