use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{DistanceToken, Space};

/// A k×m restriction array: column `j` lists the distances forbidden
/// between two points of color `j + 1`.
///
/// Columns are stored sorted and deduplicated. `rows` keeps the declared
/// k (the longest column as given), so a column may hold fewer than k
/// entries after deduplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictionArray {
    space: Space,
    rows: usize,
    columns: Vec<Vec<DistanceToken>>,
}

impl RestrictionArray {
    pub fn new(space: Space, columns: Vec<Vec<DistanceToken>>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Malformed("restriction array has no columns".into()));
        }
        let mut rows = 0;
        let mut stored = Vec::with_capacity(columns.len());
        for mut column in columns {
            if column.is_empty() {
                return Err(Error::Malformed("empty column".into()));
            }
            for token in &column {
                token.check_compatible(&space)?;
            }
            rows = rows.max(column.len());
            column.sort();
            column.dedup();
            stored.push(column);
        }
        Ok(RestrictionArray {
            space,
            rows,
            columns: stored,
        })
    }

    /// Array over ℤ (or a non-Euclidean ℤⁿ) from plain integer distances.
    pub fn from_integers(space: Space, columns: &[&[u64]]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&d| DistanceToken::integer(d)).collect())
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, cols)
    }

    /// Array over Euclidean ℤⁿ from squared distances.
    pub fn from_squared(space: Space, columns: &[&[u64]]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&d| DistanceToken::squared(d)).collect())
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, cols)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// k, the number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// m, the number of colors.
    pub fn colors(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<DistanceToken>] {
        &self.columns
    }

    /// Forbidden distances of a 0-based color index.
    pub fn column(&self, color: usize) -> &[DistanceToken] {
        &self.columns[color]
    }

    pub fn tokens(&self) -> impl Iterator<Item = &DistanceToken> {
        self.columns.iter().flatten()
    }

    /// Colors (0-based) partitioned into groups of identical columns, each
    /// group in increasing index order, groups ordered by first member.
    pub fn identical_column_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            match groups.iter_mut().find(|g| &self.columns[g[0]] == col) {
                Some(g) => g.push(j),
                None => groups.push(vec![j]),
            }
        }
        groups
    }

    /// Integer values of all entries, failing on a non-integral token.
    pub fn integer_columns(&self) -> Result<Vec<Vec<u64>>> {
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|t| {
                        t.as_integer()
                            .ok_or_else(|| Error::NonIntegerToken(t.to_string()))
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for RestrictionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {}: ", self.rows, self.colors(), self.space)?;
        for (j, col) in self.columns.iter().enumerate() {
            if j > 0 {
                f.write_str(" | ")?;
            }
            let parts: Vec<String> = col.iter().map(|t| t.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_columns_and_keeps_declared_rows() {
        let a = RestrictionArray::from_integers(Space::line(), &[&[2, 1, 2], &[3, 3, 3]]).unwrap();
        assert_eq!(a.rows(), 3);
        assert_eq!(a.colors(), 2);
        assert_eq!(a.integer_columns().unwrap(), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn groups_identical_columns() {
        let a =
            RestrictionArray::from_integers(Space::line(), &[&[1, 2], &[3], &[2, 1], &[3], &[4]])
                .unwrap();
        assert_eq!(
            a.identical_column_groups(),
            vec![vec![0, 2], vec![1, 3], vec![4]]
        );
    }

    #[test]
    fn rejects_bad_shapes_and_kinds() {
        assert!(RestrictionArray::new(Space::line(), vec![]).is_err());
        assert!(RestrictionArray::new(Space::line(), vec![vec![]]).is_err());
        let z2 = Space::euclidean(2).unwrap();
        assert!(matches!(
            RestrictionArray::from_integers(z2, &[&[1]]),
            Err(Error::IncompatibleToken { .. })
        ));
    }
}
