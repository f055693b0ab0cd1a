use crate::error::{Error, Result};
use crate::lattice::{PeriodicColoring, RestrictionArray, Window};

use super::certificate::{BudgetReport, Certificate, Verdict};
use super::engine::{self, ConflictModel, Outcome};
use super::{solve_window, SearchConfig};

/// Outcome of searching residue maps for one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicAttempt {
    pub coloring: Option<PeriodicColoring>,
    /// True when the absence of a coloring is definitive.
    pub exhausted: bool,
    pub nodes: u64,
}

fn line_integer_columns(array: &RestrictionArray) -> Result<Vec<Vec<u64>>> {
    if !array.space().is_line() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: array.space().dim(),
        });
    }
    array.integer_columns()
}

/// The lexicographically least residue map of period `p` that colors all of
/// ℤ, if any. A color whose column contains a multiple of `p` is unusable.
pub fn solve_periodic(array: &RestrictionArray, p: usize) -> Result<Option<PeriodicColoring>> {
    Ok(solve_periodic_with(array, p, &SearchConfig::unbounded())?.coloring)
}

pub fn solve_periodic_with(
    array: &RestrictionArray,
    p: usize,
    config: &SearchConfig,
) -> Result<PeriodicAttempt> {
    config.validate()?;
    let columns = line_integer_columns(array)?;
    if p == 0 {
        return Err(Error::NonpositiveParameter("period"));
    }
    let groups = array.identical_column_groups();
    let pm = p as u64;
    let mut banned = vec![false; columns.len()];
    let mut adjacency = Vec::with_capacity(columns.len());
    for (c, column) in columns.iter().enumerate() {
        banned[c] = column.iter().any(|d| d % pm == 0);
        let lists = (0..pm)
            .map(|r| {
                let mut out: Vec<u32> = column
                    .iter()
                    .flat_map(|d| {
                        let s = d % pm;
                        [(r + s) % pm, (r + pm - s) % pm]
                    })
                    .filter(|&q| q != r)
                    .map(|q| q as u32)
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        adjacency.push(lists);
    }
    let model = ConflictModel::new(p, adjacency, banned, &groups);
    let (outcome, nodes) = engine::search(&model, config);
    Ok(match outcome {
        Outcome::Found(residues) => PeriodicAttempt {
            coloring: Some(PeriodicColoring::new(residues)?),
            exhausted: false,
            nodes,
        },
        Outcome::Exhausted => PeriodicAttempt {
            coloring: None,
            exhausted: true,
            nodes,
        },
        Outcome::NodeBudget | Outcome::TimeBudget => PeriodicAttempt {
            coloring: None,
            exhausted: false,
            nodes,
        },
    })
}

/// Residue-level check that `g` is a D-coloring of all of ℤ: lists every
/// `(residue, color, row)` such that `residue` and `residue + d_{row,color}`
/// both carry `color` (1-based color and row).
pub fn periodic_violations(
    array: &RestrictionArray,
    g: &PeriodicColoring,
) -> Result<Vec<(usize, u32, usize)>> {
    let columns = line_integer_columns(array)?;
    let m = columns.len();
    if let Some(&c) = g.residues().iter().find(|&&c| c as usize > m) {
        return Err(Error::ColorOutOfRange { color: c, m });
    }
    let p = g.period() as u64;
    let mut out = Vec::new();
    for (r, &c) in g.residues().iter().enumerate() {
        for (row, d) in columns[c as usize - 1].iter().enumerate() {
            let q = ((r as u64 + d % p) % p) as usize;
            if g.residues()[q] == c {
                out.push((r, c, row + 1));
            }
        }
    }
    Ok(out)
}

/// Try periods `1..=p_max` in order; the first success yields a PERIODIC
/// certificate. Failing that, search the window `0..fallback_points-1`
/// (default: ten times the largest entry) for an UNSAT proof. A colorable
/// fallback window proves nothing about ℤ and gives UNKNOWN.
pub fn search_periods(
    array: &RestrictionArray,
    p_max: usize,
    config: &SearchConfig,
    fallback_points: Option<usize>,
) -> Result<Certificate> {
    config.validate()?;
    let columns = line_integer_columns(array)?;
    if p_max == 0 {
        return Err(Error::NonpositiveParameter("maximum period"));
    }
    let mut nodes = 0u64;
    let mut budget_hit = false;
    for p in 1..=p_max {
        let attempt = solve_periodic_with(array, p, config)?;
        nodes = nodes.saturating_add(attempt.nodes);
        if let Some(g) = attempt.coloring {
            return Ok(Certificate::periodic(array.clone(), g, nodes));
        }
        budget_hit |= !attempt.exhausted;
    }

    let max_entry = columns.iter().flatten().copied().max().unwrap_or(1);
    let points = fallback_points.unwrap_or((10 * max_entry) as usize).max(1);
    let window = Window::interval(0, points as i64 - 1)?;
    let cert = solve_window(&window, array, config)?;
    Ok(match cert.verdict {
        Verdict::Unsat => cert,
        Verdict::Sat => Certificate::unknown(
            array.clone(),
            Some(window),
            BudgetReport {
                reason: format!(
                    "no period up to {p_max}{}; window of {points} points is colorable",
                    if budget_hit {
                        " (some periods hit the budget)"
                    } else {
                        ""
                    }
                ),
                nodes: nodes.saturating_add(cert.nodes),
                node_budget: Some(config.node_budget),
                time_budget_secs: config.time_budget.map(|t| t.as_secs_f64()),
                resamples: None,
                cap: None,
            },
        ),
        _ => cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Space;
    use crate::solver::Payload;

    fn line(cols: &[&[u64]]) -> RestrictionArray {
        RestrictionArray::from_integers(Space::line(), cols).unwrap()
    }

    /// Direct enumeration of all m^p residue maps in lexicographic order.
    fn first_residue_map(cols: &[&[u64]], p: usize) -> Option<Vec<u32>> {
        let m = cols.len();
        let total = m.pow(p as u32);
        (0..total).find_map(|mut code| {
            let mut map = vec![0u32; p];
            for slot in map.iter_mut().rev() {
                *slot = (code % m) as u32 + 1;
                code /= m;
            }
            let ok = (0..p).all(|r| {
                let c = map[r];
                cols[c as usize - 1]
                    .iter()
                    .all(|&d| map[(r + d as usize) % p] != c)
            });
            ok.then_some(map)
        })
    }

    #[test]
    fn spec_examples() {
        assert_eq!(solve_periodic(&line(&[&[2]]), 2).unwrap(), None);
        assert_eq!(
            solve_periodic(&line(&[&[1], &[1]]), 2)
                .unwrap()
                .unwrap()
                .residues(),
            &[1, 2]
        );
        assert_eq!(
            solve_periodic(&line(&[&[1], &[2], &[3]]), 4)
                .unwrap()
                .unwrap()
                .residues(),
            &[1, 2, 1, 3]
        );
    }

    #[test]
    fn matches_enumeration() {
        let arrays: [&[&[u64]]; 5] = [
            &[&[1], &[2], &[3]],
            &[&[1, 2], &[1, 3], &[1, 4]],
            &[&[2], &[3]],
            &[&[1, 5], &[2], &[2]],
            &[&[3], &[3], &[6]],
        ];
        for cols in arrays {
            for p in 1..=7 {
                let got = solve_periodic(&line(cols), p)
                    .unwrap()
                    .map(|g| g.residues().to_vec());
                assert_eq!(got, first_residue_map(cols, p), "{cols:?} p={p}");
            }
        }
    }

    #[test]
    fn errors() {
        let z2 = Space::euclidean(2).unwrap();
        let a = RestrictionArray::from_squared(z2, &[&[1]]).unwrap();
        assert!(solve_periodic(&a, 3).is_err());
        assert!(solve_periodic(&line(&[&[1]]), 0).is_err());
        let half = RestrictionArray::new(
            Space::line(),
            vec![vec![crate::lattice::DistanceToken::rational(1, 2).unwrap()]],
        )
        .unwrap();
        assert!(matches!(
            solve_periodic(&half, 2),
            Err(Error::NonIntegerToken(_))
        ));
    }

    #[test]
    fn search_examples() {
        let cfg = SearchConfig::default();
        let cert = search_periods(&line(&[&[1], &[2], &[3]]), 20, &cfg, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Periodic);
        match &cert.payload {
            // Evens get C1 and odds C3: odd-odd gaps are even, never 3.
            Payload::Periodic(g) => assert_eq!(g.residues(), &[1, 3]),
            other => panic!("{other:?}"),
        }
        let cert = search_periods(&line(&[&[1], &[1]]), 20, &cfg, None).unwrap();
        match &cert.payload {
            Payload::Periodic(g) => assert_eq!(g.residues(), &[1, 2]),
            other => panic!("{other:?}"),
        }
        let cert = search_periods(&line(&[&[1], &[2]]), 50, &cfg, Some(5)).unwrap();
        assert_eq!(cert.verdict, Verdict::Unsat);
        assert_eq!(cert.window.as_ref().unwrap().len(), 5);
    }

    #[test]
    fn colorable_fallback_window_is_unknown() {
        // p = 1 disables both colors, yet any window is colorable.
        let cert = search_periods(&line(&[&[1], &[1]]), 1, &SearchConfig::default(), None).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
    }

    #[test]
    fn residue_check_flags_bad_maps() {
        let a = line(&[&[1], &[2], &[3]]);
        let good = PeriodicColoring::new(vec![1, 2, 1, 3]).unwrap();
        assert!(periodic_violations(&a, &good).unwrap().is_empty());
        let bad = PeriodicColoring::new(vec![1, 1, 2, 3]).unwrap();
        assert!(!periodic_violations(&a, &bad).unwrap().is_empty());
    }
}
