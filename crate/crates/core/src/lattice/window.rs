use crate::error::{Error, Result};
use crate::lattice::{shell_offsets, DistanceToken, Space};

pub type Point = Vec<i64>;

/// A finite axis-aligned box `lo..=hi` in ℤⁿ.
///
/// Points are indexed in lexicographic order with the first coordinate
/// most significant, so on ℤ the index is simply `x - lo`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    space: Space,
    lo: Point,
    hi: Point,
    strides: Vec<usize>,
    len: usize,
}

impl Window {
    pub fn new(space: Space, lo: Point, hi: Point) -> Result<Self> {
        for v in [&lo, &hi] {
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: v.len(),
                });
            }
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::EmptyWindow);
        }
        let mut strides = vec![0; space.dim()];
        let mut len = 1usize;
        for i in (0..space.dim()).rev() {
            strides[i] = len;
            let side = usize::try_from(hi[i] - lo[i] + 1).map_err(|_| Error::Overflow)?;
            len = len.checked_mul(side).ok_or(Error::Overflow)?;
        }
        Ok(Window {
            space,
            lo,
            hi,
            strides,
            len,
        })
    }

    /// The interval `lo..=hi` of ℤ.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        Window::new(Space::line(), vec![lo], vec![hi])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.lo.len()
            && p.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        Some(
            p.iter()
                .zip(&self.lo)
                .zip(&self.strides)
                .map(|((x, l), s)| (x - l) as usize * s)
                .sum(),
        )
    }

    pub fn point(&self, mut index: usize) -> Point {
        debug_assert!(index < self.len);
        self.strides
            .iter()
            .zip(&self.lo)
            .map(|(s, l)| {
                let c = index / s;
                index %= s;
                l + c as i64
            })
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len).map(|i| self.point(i))
    }
}

/// Window points at exactly the token's distance from `point`.
pub fn neighbors_at(window: &Window, point: &[i64], token: &DistanceToken) -> Result<Vec<Point>> {
    if !window.contains(point) {
        return Err(Error::PointOutsideWindow(point.to_vec()));
    }
    let offsets = shell_offsets(window.space(), token)?;
    Ok(offsets
        .into_iter()
        .map(|o| point.iter().zip(&o).map(|(x, d)| x + d).collect::<Point>())
        .filter(|q| window.contains(q))
        .collect())
}

/// A total assignment of colors `1..=m` to the points of a window, stored in
/// the window's lexicographic point order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    window: Window,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(window: Window, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != window.len() {
            return Err(Error::CoverageGap {
                expected: window.len(),
                found: colors.len(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0) {
            return Err(Error::ColorOutOfRange { color: c, m: 0 });
        }
        Ok(Coloring { window, colors })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_at(&self, p: &[i64]) -> Option<u32> {
        self.window.index_of(p).map(|i| self.colors[i])
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, sub: &Window) -> Result<Coloring> {
        let colors = sub
            .points()
            .map(|p| self.color_at(&p).ok_or(Error::PointOutsideWindow(p)))
            .collect::<Result<Vec<_>>>()?;
        Coloring::new(sub.clone(), colors)
    }
}

/// A coloring of all of ℤ given by `x ↦ residues[x mod p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicColoring {
    residues: Vec<u32>,
}

impl PeriodicColoring {
    pub fn new(residues: Vec<u32>) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::NonpositiveParameter("period"));
        }
        if let Some(&c) = residues.iter().find(|&&c| c == 0) {
            return Err(Error::ColorOutOfRange { color: c, m: 0 });
        }
        Ok(PeriodicColoring { residues })
    }

    pub fn period(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn color_of(&self, x: i64) -> u32 {
        self.residues[x.rem_euclid(self.residues.len() as i64) as usize]
    }

    pub fn max_color(&self) -> u32 {
        self.residues.iter().copied().max().unwrap_or(0)
    }

    /// The coloring this induces on a window of ℤ.
    pub fn expand(&self, window: &Window) -> Result<Coloring> {
        if !window.space().is_line() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: window.space().dim(),
            });
        }
        let colors = (window.lo()[0]..=window.hi()[0])
            .map(|x| self.color_of(x))
            .collect();
        Coloring::new(window.clone(), colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Metric;

    #[test]
    fn window_sizes() {
        assert_eq!(Window::interval(0, 4).unwrap().len(), 5);
        let z2 = Space::euclidean(2).unwrap();
        assert_eq!(Window::new(z2, vec![0, 0], vec![2, 2]).unwrap().len(), 9);
        assert_eq!(Window::interval(3, 1), Err(Error::EmptyWindow));
        assert!(matches!(
            Window::new(z2, vec![0], vec![1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lexicographic_order() {
        let z2 = Space::euclidean(2).unwrap();
        let w = Window::new(z2, vec![-1, 0], vec![0, 2]).unwrap();
        let pts: Vec<Point> = w.points().collect();
        assert_eq!(
            pts,
            vec![
                vec![-1, 0],
                vec![-1, 1],
                vec![-1, 2],
                vec![0, 0],
                vec![0, 1],
                vec![0, 2]
            ]
        );
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(w.index_of(p), Some(i));
        }
        assert_eq!(w.index_of(&[1, 0]), None);
    }

    #[test]
    fn neighbors_examples() {
        let w = Window::interval(0, 10).unwrap();
        let t = DistanceToken::integer(5).unwrap();
        assert_eq!(neighbors_at(&w, &[5], &t).unwrap(), vec![vec![0], vec![10]]);

        let z2 = Space::euclidean(2).unwrap();
        let w = Window::new(z2, vec![-5, -5], vec![5, 5]).unwrap();
        let three = DistanceToken::squared(3).unwrap();
        assert!(neighbors_at(&w, &[0, 0], &three).unwrap().is_empty());
        let five = DistanceToken::squared(25).unwrap();
        assert_eq!(neighbors_at(&w, &[0, 0], &five).unwrap().len(), 12);

        assert!(matches!(
            neighbors_at(&w, &[0, 0], &DistanceToken::integer(1).unwrap()),
            Err(Error::IncompatibleToken { .. })
        ));
        assert!(matches!(
            neighbors_at(&w, &[9, 0], &five),
            Err(Error::PointOutsideWindow(_))
        ));
    }

    #[test]
    fn neighbors_match_window_scan() {
        let taxi = Space::new(2, Metric::L1).unwrap();
        let w = Window::new(taxi, vec![-3, -2], vec![4, 3]).unwrap();
        for d in 1..6 {
            let t = DistanceToken::integer(d).unwrap();
            for p in w.points() {
                let got = neighbors_at(&w, &p, &t).unwrap();
                let want: Vec<Point> = w
                    .points()
                    .filter(|q| taxi.distance_value(&p, q) == d)
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn coloring_validation() {
        let w = Window::interval(0, 2).unwrap();
        assert!(matches!(
            Coloring::new(w.clone(), vec![1, 2]),
            Err(Error::CoverageGap {
                expected: 3,
                found: 2
            })
        ));
        assert!(Coloring::new(w, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn periodic_expansion_handles_negatives() {
        let g = PeriodicColoring::new(vec![1, 2, 1, 3]).unwrap();
        let c = g.expand(&Window::interval(-4, 3).unwrap()).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1, 3, 1, 2, 1, 3]);
    }
}
