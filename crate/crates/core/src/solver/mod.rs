//! Exact decision procedures for D-colorability.
//!
//! [`solve_window`] decides a finite lattice window by complete
//! backtracking; [`solve_periodic`] and [`search_periods`] look for colorings
//! of all of ℤ that factor through ℤ/pℤ. Results are packaged as
//! [`Certificate`]s that [`verify_certificate`] can re-check from scratch.

mod certificate;
mod engine;
mod periodic;
mod search;
mod verify;

use std::time::Duration;

use crate::error::{Error, Result};

pub use certificate::{
    verify_certificate, BudgetReport, Certificate, Payload, SearchAttestation, Verdict,
    TOOL_VERSION,
};
pub use periodic::{periodic_violations, search_periods, solve_periodic, solve_periodic_with};
pub(crate) use search::window_adjacency;
pub use search::{solve_point_set, solve_window, PointSetOutcome};
pub use verify::{verify_coloring, Violation, ViolationReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Maximum number of color assignments tried.
    pub node_budget: u64,
    /// Wall-clock limit; `None` searches until the node budget runs out.
    pub time_budget: Option<Duration>,
    /// Restrict colors with identical columns to first use in index order.
    pub symmetry_breaking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 1_000_000_000,
            time_budget: Some(Duration::from_secs(600)),
            symmetry_breaking: true,
        }
    }
}

impl SearchConfig {
    pub fn unbounded() -> Self {
        SearchConfig {
            node_budget: u64::MAX,
            time_budget: None,
            symmetry_breaking: true,
        }
    }

    pub fn with_nodes(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            ..SearchConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::NonpositiveParameter("node budget"));
        }
        if self.time_budget.is_some_and(|t| t.is_zero()) {
            return Err(Error::NonpositiveParameter("time budget"));
        }
        Ok(())
    }
}
