use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    Coloring, DistanceToken, PeriodicColoring, Point, RestrictionArray, Space, Window,
};

/// A k×m array of forbidden displacement vectors: no two points `x` and
/// `x + v` may both take color `j` when `v` is in column `j`.
///
/// Restricting `v` and `−v` is the same condition, so each vector is stored
/// with its first nonzero coordinate positive and columns are deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorArray {
    dim: usize,
    rows: usize,
    columns: Vec<Vec<Vec<i64>>>,
}

impl VectorArray {
    pub fn new(dim: usize, columns: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NonpositiveParameter("dimension"));
        }
        if columns.is_empty() || columns.iter().any(|c| c.is_empty()) {
            return Err(Error::Malformed(
                "vector array needs nonempty columns".into(),
            ));
        }
        let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
        let mut stored = Vec::with_capacity(columns.len());
        for column in columns {
            let mut out = Vec::with_capacity(column.len());
            for v in column {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                match v.iter().find(|&&x| x != 0) {
                    None => return Err(Error::InvalidParameter("zero restriction vector".into())),
                    Some(&lead) if lead < 0 => out.push(v.iter().map(|x| -x).collect()),
                    Some(_) => out.push(v),
                }
            }
            out.sort();
            out.dedup();
            stored.push(out);
        }
        Ok(VectorArray {
            dim,
            rows,
            columns: stored,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn colors(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Vec<i64>>] {
        &self.columns
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Collapse vector restrictions on ℤⁿ to distance restrictions on ℤ along
/// the functional `x ↦ λ·x`: entry (i,j) becomes |λ·v_ij|.
pub fn wepsic_project(vectors: &VectorArray, lambda: &[i64]) -> Result<RestrictionArray> {
    if lambda.len() != vectors.dim() {
        return Err(Error::DimensionMismatch {
            expected: vectors.dim(),
            found: lambda.len(),
        });
    }
    let columns = vectors
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .map(|v| match dot(lambda, v).unsigned_abs() {
                    0 => Err(Error::DegenerateFunctional(v.clone())),
                    d => DistanceToken::integer(d),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RestrictionArray::new(Space::line(), columns)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorViolation {
    pub a: Point,
    pub b: Point,
    pub color: u32,
    /// 1-based index into the (normalized) column.
    pub row: usize,
}

/// Every monochromatic pair `(x, x + v)` inside the window with `v` in the
/// column of their shared color.
pub fn verify_vector_coloring(
    window: &Window,
    vectors: &VectorArray,
    coloring: &Coloring,
) -> Result<Vec<VectorViolation>> {
    if window.space().dim() != vectors.dim() {
        return Err(Error::DimensionMismatch {
            expected: vectors.dim(),
            found: window.space().dim(),
        });
    }
    if coloring.window() != window {
        return Err(Error::CoverageGap {
            expected: window.len(),
            found: coloring.colors().len(),
        });
    }
    let m = vectors.colors();
    let mut out = Vec::new();
    for (i, &c) in coloring.colors().iter().enumerate() {
        if c == 0 || c as usize > m {
            return Err(Error::ColorOutOfRange { color: c, m });
        }
        let x = window.point(i);
        for (row, v) in vectors.columns()[c as usize - 1].iter().enumerate() {
            let y: Point = x.iter().zip(v).map(|(a, b)| a + b).collect();
            if coloring.color_at(&y) == Some(c) {
                out.push(VectorViolation {
                    a: x.clone(),
                    b: y,
                    color: c,
                    row: row + 1,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub coloring: Coloring,
    pub violations: Vec<VectorViolation>,
}

/// Pull a periodic coloring of ℤ back to a window of ℤⁿ by `x ↦ g(λ·x)`
/// and check it against the vector restrictions.
pub fn wepsic_lift(
    g: &PeriodicColoring,
    lambda: &[i64],
    window: &Window,
    vectors: &VectorArray,
) -> Result<Lift> {
    if lambda.len() != window.space().dim() {
        return Err(Error::DimensionMismatch {
            expected: window.space().dim(),
            found: lambda.len(),
        });
    }
    let colors = window
        .points()
        .map(|x| g.color_of(dot(lambda, &x)))
        .collect();
    let coloring = Coloring::new(window.clone(), colors)?;
    let violations = verify_vector_coloring(window, vectors, &coloring)?;
    Ok(Lift {
        coloring,
        violations,
    })
}
