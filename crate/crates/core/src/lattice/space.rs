use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Euclidean,
    L1,
    Linf,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::L1 => "l1",
            Metric::Linf => "linf",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "euclidean" => Some(Metric::Euclidean),
            "l1" => Some(Metric::L1),
            "linf" => Some(Metric::Linf),
            _ => None,
        }
    }
}

/// The lattice ℤⁿ together with a metric.
///
/// On the line all three metrics coincide, so a one-dimensional space is
/// normalized to `Metric::Euclidean` at construction and compares equal
/// regardless of the metric it was built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    dim: usize,
    metric: Metric,
}

impl Space {
    pub fn new(dim: usize, metric: Metric) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NonpositiveParameter("dimension"));
        }
        let metric = if dim == 1 { Metric::Euclidean } else { metric };
        Ok(Space { dim, metric })
    }

    pub fn line() -> Self {
        Space {
            dim: 1,
            metric: Metric::Euclidean,
        }
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Space::new(dim, Metric::Euclidean)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn is_line(&self) -> bool {
        self.dim == 1
    }

    /// Euclidean lattices of dimension ≥ 2 carry squared-integer tokens.
    pub fn uses_squared_tokens(&self) -> bool {
        self.dim >= 2 && self.metric == Metric::Euclidean
    }

    /// Integer "size" of a displacement vector: the squared length for
    /// Euclidean n ≥ 2, the norm itself otherwise.
    pub fn norm_value(&self, v: &[i64]) -> u64 {
        debug_assert_eq!(v.len(), self.dim);
        if self.dim == 1 {
            return v[0].unsigned_abs();
        }
        match self.metric {
            Metric::Euclidean => v.iter().map(|&x| x.unsigned_abs().pow(2)).sum(),
            Metric::L1 => v.iter().map(|&x| x.unsigned_abs()).sum(),
            Metric::Linf => v.iter().map(|&x| x.unsigned_abs()).max().unwrap_or(0),
        }
    }

    pub fn distance_value(&self, a: &[i64], b: &[i64]) -> u64 {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.norm_value(&diff)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            write!(f, "Z")
        } else {
            write!(f, "Z^{} ({})", self.dim, self.metric.name())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Integer,
    Squared,
    Rational,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenKind::Integer => "integer-distance",
            TokenKind::Squared => "squared-integer-distance",
            TokenKind::Rational => "rational-distance",
        })
    }
}

/// An exact positive distance: `num/den` lattice steps, or for squared
/// tokens a squared distance `num` (with `den` fixed at 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceToken {
    kind: TokenKind,
    num: u64,
    den: u64,
}

impl DistanceToken {
    pub fn integer(d: u64) -> Result<Self> {
        Self::build(TokenKind::Integer, d, 1)
    }

    pub fn squared(d: u64) -> Result<Self> {
        Self::build(TokenKind::Squared, d, 1)
    }

    pub fn rational(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Malformed("zero denominator".into()));
        }
        let g = num.gcd(&den).max(1);
        Self::build(TokenKind::Rational, num / g, den / g)
    }

    fn build(kind: TokenKind, num: u64, den: u64) -> Result<Self> {
        if num == 0 {
            return Err(Error::NonpositiveDistance);
        }
        Ok(DistanceToken { kind, num, den })
    }

    pub fn kind(&self) -> TokenKind {
        self.kind
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// The token's value as an integer, if it is one. Squared tokens
    /// report the squared distance.
    pub fn as_integer(&self) -> Option<u64> {
        (self.den == 1).then_some(self.num)
    }

    pub fn check_compatible(&self, space: &Space) -> Result<()> {
        let ok = match self.kind {
            TokenKind::Squared => space.uses_squared_tokens(),
            TokenKind::Integer => !space.uses_squared_tokens(),
            TokenKind::Rational => space.is_line(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IncompatibleToken {
                kind: self.kind,
                space: *space,
            })
        }
    }

    /// Whether a displacement of integer size `value` (see
    /// [`Space::norm_value`]) is at exactly this distance.
    pub fn matches(&self, value: u64) -> bool {
        u128::from(value) * u128::from(self.den) == u128::from(self.num)
    }
}

impl fmt::Display for DistanceToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Integer => write!(f, "{}", self.num),
            TokenKind::Squared => write!(f, "√{}", self.num),
            TokenKind::Rational if self.den == 1 => write!(f, "{}", self.num),
            TokenKind::Rational => write!(f, "{}/{}", self.num, self.den),
        }
    }
}

/// All displacement vectors at exactly the token's distance, in
/// lexicographic order.
pub fn shell_offsets(space: &Space, token: &DistanceToken) -> Result<Vec<Vec<i64>>> {
    token.check_compatible(space)?;
    let Some(value) = token.as_integer() else {
        // A non-integral distance never occurs between lattice points.
        return Ok(Vec::new());
    };
    let value = i64::try_from(value).map_err(|_| Error::Overflow)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(space.dim());
    if space.is_line() {
        out.push(vec![-value]);
        out.push(vec![value]);
        return Ok(out);
    }
    match space.metric() {
        Metric::Euclidean => squares_shell(space.dim(), value, &mut prefix, &mut out),
        Metric::L1 => l1_shell(space.dim(), value, &mut prefix, &mut out),
        Metric::Linf => linf_shell(space.dim(), value, false, &mut prefix, &mut out),
    }
    Ok(out)
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn squares_shell(left: usize, rem: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if left == 1 {
        let r = isqrt(rem);
        if r * r == rem {
            let roots: &[i64] = if r == 0 { &[0] } else { &[-r, r] };
            for &z in roots {
                prefix.push(z);
                out.push(prefix.clone());
                prefix.pop();
            }
        }
        return;
    }
    let r = isqrt(rem);
    for z in -r..=r {
        prefix.push(z);
        squares_shell(left - 1, rem - z * z, prefix, out);
        prefix.pop();
    }
}

fn l1_shell(left: usize, rem: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if left == 1 {
        let roots: &[i64] = if rem == 0 { &[0] } else { &[-rem, rem] };
        for &z in roots {
            prefix.push(z);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for z in -rem..=rem {
        prefix.push(z);
        l1_shell(left - 1, rem - z.abs(), prefix, out);
        prefix.pop();
    }
}

fn linf_shell(
    left: usize,
    bound: i64,
    reached: bool,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if left == 0 {
        if reached {
            out.push(prefix.clone());
        }
        return;
    }
    for z in -bound..=bound {
        prefix.push(z);
        linf_shell(left - 1, bound, reached || z.abs() == bound, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_normalizes_metric() {
        assert_eq!(Space::new(1, Metric::Linf).unwrap(), Space::line());
        assert!(Space::new(0, Metric::L1).is_err());
    }

    #[test]
    fn token_positivity() {
        assert_eq!(DistanceToken::integer(0), Err(Error::NonpositiveDistance));
        assert_eq!(
            DistanceToken::rational(0, 3),
            Err(Error::NonpositiveDistance)
        );
        let t = DistanceToken::rational(6, 4).unwrap();
        assert_eq!((t.numer(), t.denom()), (3, 2));
    }

    #[test]
    fn token_kind_compatibility() {
        let z2 = Space::euclidean(2).unwrap();
        let taxi = Space::new(2, Metric::L1).unwrap();
        let sq = DistanceToken::squared(2).unwrap();
        let int = DistanceToken::integer(2).unwrap();
        let rat = DistanceToken::rational(1, 2).unwrap();
        assert!(sq.check_compatible(&z2).is_ok());
        assert!(int.check_compatible(&z2).is_err());
        assert!(sq.check_compatible(&taxi).is_err());
        assert!(int.check_compatible(&taxi).is_ok());
        assert!(sq.check_compatible(&Space::line()).is_err());
        assert!(rat.check_compatible(&Space::line()).is_ok());
        assert!(rat.check_compatible(&taxi).is_err());
    }

    #[test]
    fn shells_by_brute_force() {
        for (space, max) in [
            (Space::euclidean(2).unwrap(), 60u64),
            (Space::euclidean(3).unwrap(), 30),
            (Space::new(2, Metric::L1).unwrap(), 6),
            (Space::new(3, Metric::Linf).unwrap(), 3),
        ] {
            for d in 1..=max {
                let token = if space.uses_squared_tokens() {
                    DistanceToken::squared(d).unwrap()
                } else {
                    DistanceToken::integer(d).unwrap()
                };
                let got = shell_offsets(&space, &token).unwrap();
                let r = d as i64;
                let mut want = Vec::new();
                let n = space.dim();
                let side = (2 * r + 1) as usize;
                for code in 0..side.pow(n as u32) {
                    let mut c = code;
                    let mut v = vec![0i64; n];
                    for slot in v.iter_mut().rev() {
                        *slot = (c % side) as i64 - r;
                        c /= side;
                    }
                    if space.norm_value(&v) == d {
                        want.push(v);
                    }
                }
                assert_eq!(got, want, "{space} d={d}");
            }
        }
    }

    #[test]
    fn rational_shell_on_line() {
        let half = DistanceToken::rational(1, 2).unwrap();
        assert!(shell_offsets(&Space::line(), &half).unwrap().is_empty());
        let three = DistanceToken::rational(3, 1).unwrap();
        assert_eq!(
            shell_offsets(&Space::line(), &three).unwrap(),
            vec![vec![-3], vec![3]]
        );
    }
}
