use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{shell_offsets, Coloring, Point, RestrictionArray, Space, Window};

use super::certificate::{BudgetReport, Certificate, SearchAttestation, Verdict};
use super::engine::{self, ConflictModel, Outcome};
use super::{verify_coloring, SearchConfig};

/// Result of searching an arbitrary finite lattice point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSetOutcome {
    pub verdict: Verdict,
    /// 1-based colors in the order the points were given (SAT only).
    pub colors: Option<Vec<u32>>,
    pub nodes: u64,
    pub stop_reason: Option<String>,
}

fn build_model(
    space: &Space,
    points: &[Point],
    array: &RestrictionArray,
    lookup: impl Fn(&[i64]) -> Option<usize>,
) -> Result<ConflictModel> {
    let groups = array.identical_column_groups();
    let mut adjacency = vec![Vec::new(); array.colors()];
    for group in &groups {
        let mut offsets = Vec::new();
        for token in array.column(group[0]) {
            offsets.extend(shell_offsets(space, token)?);
        }
        let lists = neighbor_lists(points, &offsets, &lookup);
        for &c in group {
            adjacency[c] = lists.clone();
        }
    }
    let banned = vec![false; array.colors()];
    Ok(ConflictModel::new(points.len(), adjacency, banned, &groups))
}

/// Per-color conflict lists over window indices: `result[c][p]` holds the
/// window points that may not share color `c` with point `p`.
pub(crate) fn window_adjacency(
    window: &Window,
    array: &RestrictionArray,
) -> Result<Vec<Vec<Vec<u32>>>> {
    let points: Vec<Point> = window.points().collect();
    let mut out = vec![Vec::new(); array.colors()];
    for group in array.identical_column_groups() {
        let mut offsets = Vec::new();
        for token in array.column(group[0]) {
            offsets.extend(shell_offsets(window.space(), token)?);
        }
        let lists = neighbor_lists(&points, &offsets, |q| window.index_of(q));
        for &c in &group {
            out[c] = lists.clone();
        }
    }
    Ok(out)
}

fn neighbor_lists(
    points: &[Point],
    offsets: &[Point],
    lookup: impl Fn(&[i64]) -> Option<usize>,
) -> Vec<Vec<u32>> {
    points
        .iter()
        .map(|p| {
            let mut out: Vec<u32> = offsets
                .iter()
                .filter_map(|o| {
                    let q: Point = p.iter().zip(o).map(|(x, d)| x + d).collect();
                    lookup(&q).map(|i| i as u32)
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

fn run(model: &ConflictModel, config: &SearchConfig) -> PointSetOutcome {
    let (outcome, nodes) = engine::search(model, config);
    match outcome {
        Outcome::Found(colors) => PointSetOutcome {
            verdict: Verdict::Sat,
            colors: Some(colors),
            nodes,
            stop_reason: None,
        },
        Outcome::Exhausted => PointSetOutcome {
            verdict: Verdict::Unsat,
            colors: None,
            nodes,
            stop_reason: None,
        },
        Outcome::NodeBudget => PointSetOutcome {
            verdict: Verdict::Unknown,
            colors: None,
            nodes,
            stop_reason: Some("node budget exhausted".into()),
        },
        Outcome::TimeBudget => PointSetOutcome {
            verdict: Verdict::Unknown,
            colors: None,
            nodes,
            stop_reason: Some("time budget exhausted".into()),
        },
    }
}

/// Exhaustive search over an arbitrary finite set of lattice points, taken
/// in the order given.
pub fn solve_point_set(
    space: &Space,
    points: &[Point],
    array: &RestrictionArray,
    config: &SearchConfig,
) -> Result<PointSetOutcome> {
    config.validate()?;
    if array.space() != space {
        return Err(Error::SpaceMismatch {
            array: *array.space(),
            window: *space,
        });
    }
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if p.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: p.len(),
            });
        }
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::InvalidParameter(format!("duplicate point {p:?}")));
        }
    }
    let model = build_model(space, points, array, |q| index.get(q).copied())?;
    Ok(run(&model, config))
}

/// Decide whether the window admits a D-coloring.
///
/// Points are visited in lexicographic window order, colors in increasing
/// order, with forward checking; with symmetry breaking on, colors sharing
/// an identical column are first used in index order. A SAT answer is the
/// lexicographically least D-coloring of the window.
pub fn solve_window(
    window: &Window,
    array: &RestrictionArray,
    config: &SearchConfig,
) -> Result<Certificate> {
    config.validate()?;
    if array.space() != window.space() {
        return Err(Error::SpaceMismatch {
            array: *array.space(),
            window: *window.space(),
        });
    }
    let points: Vec<Point> = window.points().collect();
    let model = build_model(window.space(), &points, array, |q| window.index_of(q))?;
    let outcome = run(&model, config);
    Ok(match outcome.verdict {
        Verdict::Sat => {
            let coloring = Coloring::new(window.clone(), outcome.colors.unwrap_or_default())?;
            let report = verify_coloring(window, array, &coloring)?;
            assert!(report.is_clean(), "solver produced an invalid coloring");
            Certificate::sat(array.clone(), coloring, outcome.nodes)
        }
        Verdict::Unsat => Certificate::unsat(
            array.clone(),
            window.clone(),
            SearchAttestation {
                nodes: outcome.nodes,
                node_budget: config.node_budget,
                symmetry_breaking: config.symmetry_breaking,
                exhausted: true,
            },
        ),
        _ => Certificate::unknown(
            array.clone(),
            Some(window.clone()),
            BudgetReport {
                reason: outcome.stop_reason.unwrap_or_default(),
                nodes: outcome.nodes,
                node_budget: Some(config.node_budget),
                time_budget_secs: config.time_budget.map(|t| t.as_secs_f64()),
                resamples: None,
                cap: None,
            },
        ),
    })
}
