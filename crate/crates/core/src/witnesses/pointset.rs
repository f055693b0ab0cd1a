use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lattice::{DistanceToken, Point, RestrictionArray, Space};

use super::QSqrt5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Integer,
    Rational,
    QSqrt5,
    /// Vertices of a regular polygon, identified by index.
    PolygonIndex,
}

impl Field {
    pub fn tag(self) -> &'static str {
        match self {
            Field::Integer => "int",
            Field::Rational => "rat",
            Field::QSqrt5 => "q-sqrt5",
            Field::PolygonIndex => "polygon",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordinates {
    Integer(Vec<Vec<i64>>),
    Rational(Vec<Vec<Rational64>>),
    QSqrt5(Vec<Vec<QSqrt5>>),
    /// The regular `sides`-gon; vertex `j` sits at angle 2πj/sides and
    /// the chord between vertices i, j is classified by its step
    /// min(|i−j|, sides−|i−j|).
    Polygon {
        sides: usize,
    },
}

/// A finite set of distinct points with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    coords: Coordinates,
}

fn check_points<T: Eq + std::hash::Hash + Clone>(points: &[Vec<T>]) -> Result<()> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidParameter("empty point set".into()));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::NonpositiveParameter("dimension"));
    }
    let mut seen = HashSet::new();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if !seen.insert(p.clone()) {
            return Err(Error::InvalidParameter("repeated point".into()));
        }
    }
    Ok(())
}

impl PointSet {
    pub fn new(coords: Coordinates) -> Result<Self> {
        match &coords {
            Coordinates::Integer(p) => check_points(p)?,
            Coordinates::Rational(p) => check_points(p)?,
            Coordinates::QSqrt5(p) => check_points(p)?,
            Coordinates::Polygon { sides } if *sides < 3 => {
                return Err(Error::InvalidParameter(
                    "a polygon needs 3 or more sides".into(),
                ))
            }
            Coordinates::Polygon { .. } => {}
        }
        Ok(PointSet { coords })
    }

    pub fn integer(points: Vec<Vec<i64>>) -> Result<Self> {
        PointSet::new(Coordinates::Integer(points))
    }

    pub fn coords(&self) -> &Coordinates {
        &self.coords
    }

    pub fn field(&self) -> Field {
        match self.coords {
            Coordinates::Integer(_) => Field::Integer,
            Coordinates::Rational(_) => Field::Rational,
            Coordinates::QSqrt5(_) => Field::QSqrt5,
            Coordinates::Polygon { .. } => Field::PolygonIndex,
        }
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coordinates::Integer(p) => p.len(),
            Coordinates::Rational(p) => p.len(),
            Coordinates::QSqrt5(p) => p.len(),
            Coordinates::Polygon { sides } => *sides,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coordinates::Integer(p) => p[0].len(),
            Coordinates::Rational(p) => p[0].len(),
            Coordinates::QSqrt5(p) => p[0].len(),
            Coordinates::Polygon { .. } => 2,
        }
    }

    /// The set as lattice points of Euclidean ℤⁿ, when it is one.
    pub fn lattice_points(&self) -> Option<(Space, Vec<Point>)> {
        match &self.coords {
            Coordinates::Integer(p) => Some((Space::euclidean(p[0].len()).ok()?, p.clone())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// {0, 1, …, k} ⊂ ℤ
    Path { k: usize },
    /// regular (2k+1)-gon
    Polygon { k: usize },
    /// {0,1}^k
    Hypercube { k: usize },
    /// cyclic permutations of (0, ±1, ±φ)
    Icosahedron,
    /// 0/1 indicator vectors of the k-subsets of {1, …, n+1}
    Subsets { n: usize, k: usize },
}

impl WitnessKind {
    /// Number of distinct distances the construction realizes.
    pub fn expected_distances(&self) -> usize {
        match *self {
            WitnessKind::Path { k } | WitnessKind::Polygon { k } | WitnessKind::Hypercube { k } => {
                k
            }
            WitnessKind::Icosahedron => 3,
            WitnessKind::Subsets { k, .. } => k,
        }
    }

    /// Size of the construction.
    pub fn expected_size(&self) -> usize {
        match *self {
            WitnessKind::Path { k } => k + 1,
            WitnessKind::Polygon { k } => 2 * k + 1,
            WitnessKind::Hypercube { k } => 1 << k,
            WitnessKind::Icosahedron => 12,
            WitnessKind::Subsets { n, k } => binomial(n + 1, k),
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessKind::Path { k } => write!(f, "path({k})"),
            WitnessKind::Polygon { k } => write!(f, "polygon({k})"),
            WitnessKind::Hypercube { k } => write!(f, "hypercube({k})"),
            WitnessKind::Icosahedron => write!(f, "icosahedron"),
            WitnessKind::Subsets { n, k } => write!(f, "subsets({n},{k})"),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn make_witness(kind: WitnessKind) -> Result<PointSet> {
    let need = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{kind}: parameter out of range"
            )))
        }
    };
    match kind {
        WitnessKind::Path { k } => {
            need(k >= 1)?;
            PointSet::integer((0..=k as i64).map(|x| vec![x]).collect())
        }
        WitnessKind::Polygon { k } => {
            need(k >= 1)?;
            PointSet::new(Coordinates::Polygon { sides: 2 * k + 1 })
        }
        WitnessKind::Hypercube { k } => {
            need((1..=20).contains(&k))?;
            let pts = (0..1u64 << k)
                .map(|bits| (0..k).rev().map(|i| ((bits >> i) & 1) as i64).collect())
                .collect();
            PointSet::integer(pts)
        }
        WitnessKind::Icosahedron => {
            let phi = QSqrt5::phi();
            let one = QSqrt5::from_integer(1);
            let zero = QSqrt5::zero();
            let mut pts = Vec::with_capacity(12);
            for s in [-one, one] {
                for t in [-phi, phi] {
                    let base = [zero, s, t];
                    for shift in 0..3 {
                        pts.push((0..3).map(|i| base[(i + 3 - shift) % 3]).collect());
                    }
                }
            }
            PointSet::new(Coordinates::QSqrt5(pts))
        }
        WitnessKind::Subsets { n, k } => {
            need(k >= 1 && n + 1 >= 2 * k && n < 24)?;
            let width = n + 1;
            let mut pts = Vec::new();
            for mask in 0..1u32 << width {
                if mask.count_ones() as usize == k {
                    pts.push((0..width).rev().map(|i| ((mask >> i) & 1) as i64).collect());
                }
            }
            pts.sort();
            PointSet::integer(pts)
        }
    }
}

/// An exact squared distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldValue {
    Integer(i64),
    Rational(Rational64),
    QSqrt5(QSqrt5),
    /// Squared chord 2 − 2cos(2πj/n) of a regular n-gon, identified by j.
    Chord {
        step: usize,
        sides: usize,
    },
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Integer(v) => write!(f, "{v}"),
            FieldValue::Rational(v) => write!(f, "{v}"),
            FieldValue::QSqrt5(v) => write!(f, "{v}"),
            FieldValue::Chord { step, sides } => write!(f, "chord({step}/{sides})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Distinct squared distances in increasing order with pair counts.
    pub classes: Vec<(FieldValue, usize)>,
}

impl SpectrumReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn pair_count(&self) -> usize {
        self.classes.iter().map(|(_, c)| c).sum()
    }
}

fn squared_distances<T, F>(points: &[Vec<T>], sq: F) -> Vec<FieldValue>
where
    F: Fn(&[T], &[T]) -> FieldValue,
{
    let mut out = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            out.push(sq(a, b));
        }
    }
    out
}

/// Group every unordered pair by its exact squared distance.
pub fn distance_spectrum(set: &PointSet) -> Result<SpectrumReport> {
    if set.len() < 2 {
        return Err(Error::SingletonPointSet);
    }
    let mut values = match set.coords() {
        Coordinates::Integer(p) => squared_distances(p, |a, b| {
            FieldValue::Integer(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
        }),
        Coordinates::Rational(p) => squared_distances(p, |a, b| {
            FieldValue::Rational(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
        }),
        Coordinates::QSqrt5(p) => squared_distances(p, |a, b| {
            FieldValue::QSqrt5(a.iter().zip(b).fold(QSqrt5::zero(), |acc, (x, y)| {
                let d = *x - *y;
                acc + d * d
            }))
        }),
        Coordinates::Polygon { sides } => {
            let n = *sides;
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let step = (j - i).min(n - (j - i));
                    out.push(FieldValue::Chord { step, sides: n });
                }
            }
            out
        }
    };
    values.sort();
    let mut classes: Vec<(FieldValue, usize)> = Vec::new();
    for v in values {
        match classes.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => classes.push((v, 1)),
        }
    }
    Ok(SpectrumReport { classes })
}

/// The k×m array whose every column forbids all distances realized by a
/// lattice point set. `None` when the set has no lattice form.
pub fn all_distances_array(set: &PointSet, m: usize) -> Result<Option<RestrictionArray>> {
    if m == 0 {
        return Err(Error::NonpositiveParameter("color count"));
    }
    let Some((space, _)) = set.lattice_points() else {
        return Ok(None);
    };
    let spectrum = distance_spectrum(set)?;
    let column = spectrum
        .classes
        .iter()
        .map(|(v, _)| match v {
            FieldValue::Integer(sq) if space.is_line() => {
                let d = (*sq as f64).sqrt().round() as u64;
                debug_assert_eq!(d * d, *sq as u64);
                DistanceToken::integer(d)
            }
            FieldValue::Integer(sq) => DistanceToken::squared(*sq as u64),
            _ => unreachable!("lattice sets have integer squared distances"),
        })
        .collect::<Result<Vec<_>>>()?;
    RestrictionArray::new(space, vec![column; m]).map(Some)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueBound {
    /// Number of distinct distances in the set.
    pub k: usize,
    /// |S|: k×(|S|−1) arrays exist that cannot be satisfied.
    pub bound: usize,
    /// The unsatisfiable k×(|S|−1) array, for sets the solver can represent.
    pub witness: Option<RestrictionArray>,
}

pub fn clique_bound(set: &PointSet) -> Result<CliqueBound> {
    let spectrum = distance_spectrum(set)?;
    Ok(CliqueBound {
        k: spectrum.class_count(),
        bound: set.len(),
        witness: all_distances_array(set, set.len() - 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_sizes_and_spectra() {
        let cases = [
            (WitnessKind::Path { k: 4 }, 5, 4),
            (WitnessKind::Subsets { n: 4, k: 2 }, 10, 2),
            (WitnessKind::Icosahedron, 12, 3),
            (WitnessKind::Polygon { k: 2 }, 5, 2),
            (WitnessKind::Hypercube { k: 3 }, 8, 3),
        ];
        for (kind, size, k) in cases {
            let s = make_witness(kind).unwrap();
            assert_eq!(s.len(), size, "{kind}");
            let spectrum = distance_spectrum(&s).unwrap();
            assert_eq!(spectrum.class_count(), k, "{kind}");
            assert_eq!(spectrum.pair_count(), size * (size - 1) / 2);
        }
    }

    #[test]
    fn unit_square() {
        let s = PointSet::integer(vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
        let spectrum = distance_spectrum(&s).unwrap();
        assert_eq!(
            spectrum.classes,
            vec![(FieldValue::Integer(1), 4), (FieldValue::Integer(2), 2)]
        );
    }

    #[test]
    fn hypercube_classes_are_hamming_weights() {
        let spectrum =
            distance_spectrum(&make_witness(WitnessKind::Hypercube { k: 3 }).unwrap()).unwrap();
        let values: Vec<FieldValue> = spectrum.classes.iter().map(|c| c.0).collect();
        assert_eq!(
            values,
            vec![
                FieldValue::Integer(1),
                FieldValue::Integer(2),
                FieldValue::Integer(3)
            ]
        );
    }

    #[test]
    fn icosahedron_edges() {
        let s = make_witness(WitnessKind::Icosahedron).unwrap();
        let spectrum = distance_spectrum(&s).unwrap();
        // 30 edges of squared length 4, 30 of 4φ², 6 diameters of 4φ²+4
        let counts: Vec<usize> = spectrum.classes.iter().map(|c| c.1).collect();
        assert_eq!(counts, vec![30, 30, 6]);
        assert_eq!(
            spectrum.classes[0].0,
            FieldValue::QSqrt5(QSqrt5::from_integer(4))
        );
    }

    #[test]
    fn parameter_errors() {
        assert!(make_witness(WitnessKind::Path { k: 0 }).is_err());
        assert!(make_witness(WitnessKind::Subsets { n: 2, k: 2 }).is_err());
        assert!(make_witness(WitnessKind::Polygon { k: 0 }).is_err());
        let single = PointSet::integer(vec![vec![3]]).unwrap();
        assert_eq!(distance_spectrum(&single), Err(Error::SingletonPointSet));
        assert!(PointSet::integer(vec![vec![1], vec![1]]).is_err());
        assert!(PointSet::integer(vec![vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn clique_bounds_match_the_bullets() {
        for k in 1..=5 {
            let b = clique_bound(&make_witness(WitnessKind::Path { k }).unwrap()).unwrap();
            assert_eq!((b.k, b.bound), (k, k + 1));
            let w = b.witness.unwrap();
            assert_eq!((w.rows(), w.colors()), (k, k));
            let b = clique_bound(&make_witness(WitnessKind::Polygon { k }).unwrap()).unwrap();
            assert_eq!((b.k, b.bound), (k, 2 * k + 1));
            assert!(b.witness.is_none());
            let b = clique_bound(&make_witness(WitnessKind::Hypercube { k }).unwrap()).unwrap();
            assert_eq!((b.k, b.bound), (k, 1 << k));
        }
        let b = clique_bound(&make_witness(WitnessKind::Icosahedron).unwrap()).unwrap();
        assert_eq!((b.k, b.bound), (3, 12));
    }
}
