use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{shell_offsets, Coloring, DistanceToken, Point, RestrictionArray, Window};

/// Two points of color `color` at distance `d_{row,color}`. Both indices
/// are 1-based; `row` indexes the deduplicated column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub a: Point,
    pub b: Point,
    pub color: u32,
    pub row: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every unordered monochromatic pair at a forbidden distance, each listed
/// once with `a` before `b` in window order. An empty report certifies a
/// D-coloring of the window.
pub fn verify_coloring(
    window: &Window,
    array: &RestrictionArray,
    coloring: &Coloring,
) -> Result<ViolationReport> {
    if coloring.window() != window {
        return Err(Error::CoverageGap {
            expected: window.len(),
            found: coloring.colors().len(),
        });
    }
    if array.space() != window.space() {
        return Err(Error::SpaceMismatch {
            array: *array.space(),
            window: *window.space(),
        });
    }
    let m = array.colors();
    if let Some(&c) = coloring
        .colors()
        .iter()
        .find(|&&c| c == 0 || c as usize > m)
    {
        return Err(Error::ColorOutOfRange { color: c, m });
    }

    let mut shells: HashMap<DistanceToken, Vec<Point>> = HashMap::new();
    for token in array.tokens() {
        if !shells.contains_key(token) {
            // Only the forward half: pairs are reported from their first point.
            let forward = shell_offsets(window.space(), token)?
                .into_iter()
                .filter(|o| o.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
                .collect();
            shells.insert(*token, forward);
        }
    }

    let colors = coloring.colors();
    let mut violations = Vec::new();
    if window.space().is_line() {
        let lo = window.lo()[0];
        let n = colors.len() as i64;
        for (a, &c) in colors.iter().enumerate() {
            for (row, token) in array.column(c as usize - 1).iter().enumerate() {
                for o in &shells[token] {
                    let b = a as i64 + o[0];
                    if b < n && colors[b as usize] == c {
                        violations.push(Violation {
                            a: vec![lo + a as i64],
                            b: vec![lo + b],
                            color: c,
                            row: row + 1,
                        });
                    }
                }
            }
        }
    } else {
        for (a, &c) in colors.iter().enumerate() {
            let pa = window.point(a);
            for (row, token) in array.column(c as usize - 1).iter().enumerate() {
                for o in &shells[token] {
                    let pb: Point = pa.iter().zip(o).map(|(x, d)| x + d).collect();
                    if let Some(b) = window.index_of(&pb) {
                        if colors[b] == c {
                            violations.push(Violation {
                                a: pa.clone(),
                                b: pb,
                                color: c,
                                row: row + 1,
                            });
                        }
                    }
                }
            }
        }
    }
    violations.sort_by_key(|v| (window.index_of(&v.a), window.index_of(&v.b), v.row));
    Ok(ViolationReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Space;

    fn line(cols: &[&[u64]]) -> RestrictionArray {
        RestrictionArray::from_integers(Space::line(), cols).unwrap()
    }

    #[test]
    fn alternating_is_clean() {
        let w = Window::interval(0, 9).unwrap();
        let c = Coloring::new(w.clone(), (0..10).map(|i| 1 + i % 2).collect()).unwrap();
        assert!(verify_coloring(&w, &line(&[&[1], &[1]]), &c)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn constant_single_color_lists_adjacent_pairs() {
        let w = Window::interval(0, 3).unwrap();
        let c = Coloring::new(w.clone(), vec![1; 4]).unwrap();
        let r = verify_coloring(&w, &line(&[&[1]]), &c).unwrap();
        let pairs: Vec<(i64, i64)> = r.violations.iter().map(|v| (v.a[0], v.b[0])).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(r.violations.iter().all(|v| v.color == 1 && v.row == 1));
    }

    #[test]
    fn period_four_pattern_for_one_two_three() {
        // Independent check: every pair at distance d_j with both ends colored j.
        let pattern = [1u32, 2, 1, 3];
        let w = Window::interval(0, 11).unwrap();
        let colors: Vec<u32> = (0..12).map(|i| pattern[i % 4]).collect();
        let forbidden = [1i64, 2, 3];
        for a in 0..12i64 {
            for b in a + 1..12 {
                let (ca, cb) = (colors[a as usize], colors[b as usize]);
                assert!(!(ca == cb && forbidden[ca as usize - 1] == b - a));
            }
        }
        let c = Coloring::new(w.clone(), colors).unwrap();
        assert!(verify_coloring(&w, &line(&[&[1], &[2], &[3]]), &c)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn error_paths() {
        let w = Window::interval(0, 3).unwrap();
        let other = Window::interval(0, 4).unwrap();
        let c = Coloring::new(other, vec![1; 5]).unwrap();
        assert!(matches!(
            verify_coloring(&w, &line(&[&[1]]), &c),
            Err(Error::CoverageGap { .. })
        ));
        let c = Coloring::new(w.clone(), vec![1, 2, 3, 1]).unwrap();
        assert!(matches!(
            verify_coloring(&w, &line(&[&[1], &[1]]), &c),
            Err(Error::ColorOutOfRange { color: 3, m: 2 })
        ));
    }

    #[test]
    fn grid_pairs_reported_once() {
        let z2 = Space::euclidean(2).unwrap();
        let w = Window::new(z2, vec![0, 0], vec![1, 1]).unwrap();
        let array = RestrictionArray::from_squared(z2, &[&[1, 2]]).unwrap();
        let c = Coloring::new(w.clone(), vec![1; 4]).unwrap();
        let r = verify_coloring(&w, &array, &c).unwrap();
        // 4 unit edges + 2 diagonals of the unit square
        assert_eq!(r.len(), 6);
        assert_eq!(r.violations.iter().filter(|v| v.row == 2).count(), 2);
    }
}
