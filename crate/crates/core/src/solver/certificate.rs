use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Coloring, PeriodicColoring, RestrictionArray, Window};
use crate::stochastic::ResampleStats;

use super::{periodic_violations, solve_window, verify_coloring, SearchConfig};

pub const TOOL_VERSION: &str = concat!("chromacy ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    Periodic,
    Unknown,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Periodic => "periodic",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "sat" => Some(Verdict::Sat),
            "unsat" => Some(Verdict::Unsat),
            "periodic" => Some(Verdict::Periodic),
            "unknown" => Some(Verdict::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag().to_uppercase())
    }
}

/// What an exhaustive search attests to. The trace itself is not kept;
/// re-verification repeats the (deterministic) search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchAttestation {
    pub nodes: u64,
    pub node_budget: u64,
    pub symmetry_breaking: bool,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub reason: String,
    pub nodes: u64,
    #[serde(default)]
    pub node_budget: Option<u64>,
    #[serde(default)]
    pub time_budget_secs: Option<f64>,
    #[serde(default)]
    pub resamples: Option<u64>,
    #[serde(default)]
    pub cap: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Coloring(Coloring),
    Periodic(PeriodicColoring),
    Exhausted(SearchAttestation),
    Budget(BudgetReport),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub array: RestrictionArray,
    /// Absent for PERIODIC certificates, which speak about all of ℤ.
    pub window: Option<Window>,
    pub payload: Payload,
    pub nodes: u64,
    pub seed: Option<u64>,
    /// Set when a SAT coloring came from randomized resampling.
    pub resample: Option<ResampleStats>,
    pub version: String,
}

impl Certificate {
    pub fn sat(array: RestrictionArray, coloring: Coloring, nodes: u64) -> Self {
        Certificate {
            verdict: Verdict::Sat,
            array,
            window: Some(coloring.window().clone()),
            payload: Payload::Coloring(coloring),
            nodes,
            seed: None,
            resample: None,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn heuristic_sat(
        array: RestrictionArray,
        coloring: Coloring,
        stats: ResampleStats,
    ) -> Self {
        Certificate {
            seed: Some(stats.seed),
            resample: Some(stats),
            ..Certificate::sat(array, coloring, 0)
        }
    }

    pub fn unsat(array: RestrictionArray, window: Window, attestation: SearchAttestation) -> Self {
        debug_assert!(attestation.exhausted);
        Certificate {
            verdict: Verdict::Unsat,
            array,
            window: Some(window),
            nodes: attestation.nodes,
            payload: Payload::Exhausted(attestation),
            seed: None,
            resample: None,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn periodic(array: RestrictionArray, coloring: PeriodicColoring, nodes: u64) -> Self {
        Certificate {
            verdict: Verdict::Periodic,
            array,
            window: None,
            payload: Payload::Periodic(coloring),
            nodes,
            seed: None,
            resample: None,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn unknown(array: RestrictionArray, window: Option<Window>, report: BudgetReport) -> Self {
        Certificate {
            verdict: Verdict::Unknown,
            array,
            window,
            nodes: report.nodes,
            payload: Payload::Budget(report),
            seed: None,
            resample: None,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn exhausted(&self) -> bool {
        matches!(&self.payload, Payload::Exhausted(a) if a.exhausted)
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.payload {
            Payload::Coloring(c) => Some(c),
            _ => None,
        }
    }

    pub fn periodic_coloring(&self) -> Option<&PeriodicColoring> {
        match &self.payload {
            Payload::Periodic(g) => Some(g),
            _ => None,
        }
    }
}

fn require_window(cert: &Certificate) -> Result<&Window> {
    cert.window
        .as_ref()
        .ok_or_else(|| Error::Malformed(format!("{} certificate without a window", cert.verdict)))
}

/// Re-check a certificate from scratch.
///
/// SAT colorings are re-verified pair by pair. PERIODIC residue maps are
/// checked modulo p for every entry (which covers all of ℤ) and also
/// expanded onto a window of 3p points. UNSAT repeats the exhaustive search
/// with the recorded node budget and symmetry setting and must reproduce
/// both the verdict and the node count. UNKNOWN only needs a budget report.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    match (cert.verdict, &cert.payload) {
        (Verdict::Sat, Payload::Coloring(coloring)) => {
            let window = require_window(cert)?;
            Ok(matches!(
                verify_coloring(window, &cert.array, coloring),
                Ok(report) if report.is_clean()
            ))
        }
        (Verdict::Periodic, Payload::Periodic(g)) => {
            if g.max_color() as usize > cert.array.colors() {
                return Ok(false);
            }
            if !periodic_violations(&cert.array, g)?.is_empty() {
                return Ok(false);
            }
            let window = Window::interval(0, 3 * g.period() as i64 - 1)?;
            let expanded = g.expand(&window)?;
            Ok(verify_coloring(&window, &cert.array, &expanded)?.is_clean())
        }
        (Verdict::Unsat, Payload::Exhausted(attestation)) => {
            let window = require_window(cert)?;
            if !attestation.exhausted {
                return Ok(false);
            }
            let config = SearchConfig {
                node_budget: attestation.node_budget,
                time_budget: None,
                symmetry_breaking: attestation.symmetry_breaking,
            };
            let rerun = solve_window(window, &cert.array, &config)?;
            Ok(rerun.verdict == Verdict::Unsat && rerun.nodes == attestation.nodes)
        }
        (Verdict::Unknown, Payload::Budget(_)) => Ok(true),
        _ => Ok(false),
    }
}
