use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// An element `a + b√5` of ℚ(√5) with rational parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    pub a: Rational64,
    pub b: Rational64,
}

impl QSqrt5 {
    pub fn new(a: Rational64, b: Rational64) -> Self {
        QSqrt5 { a, b }
    }

    pub fn from_integer(n: i64) -> Self {
        QSqrt5::new(Rational64::from_integer(n), Rational64::zero())
    }

    /// The golden ratio (1 + √5)/2.
    pub fn phi() -> Self {
        let half = Rational64::new(1, 2);
        QSqrt5::new(half, half)
    }

    pub fn zero() -> Self {
        QSqrt5::from_integer(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real number `a + b√5`.
    pub fn signum(&self) -> Ordering {
        let (sa, sb) = (
            self.a.cmp(&Rational64::zero()),
            self.b.cmp(&Rational64::zero()),
        );
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 5b²
            (sa, _) => {
                let a2 = self.a * self.a;
                let b2 = self.b * self.b * Rational64::from_integer(5);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl Add for QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.a, -self.b)
    }
}

impl Mul for QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: QSqrt5) -> QSqrt5 {
        let five = Rational64::from_integer(5);
        QSqrt5::new(
            self.a * o.a + five * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}√5", self.b);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}√5", self.a, sign, self.b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = QSqrt5::phi();
        assert_eq!(phi * phi, phi + QSqrt5::from_integer(1));
    }

    #[test]
    fn exact_ordering() {
        // 11/5 < √5 < 9/4
        let sqrt5 = QSqrt5::new(Rational64::zero(), Rational64::from_integer(1));
        assert!(QSqrt5::from_integer(2) < sqrt5);
        assert!(sqrt5 < QSqrt5::from_integer(3));
        assert!(sqrt5 < QSqrt5::new(Rational64::new(9, 4), Rational64::zero()));
        assert!(QSqrt5::new(Rational64::new(11, 5), Rational64::zero()) < sqrt5);
        assert_eq!((sqrt5 - sqrt5).signum(), Ordering::Equal);
        assert_eq!(QSqrt5::phi().to_string(), "1/2+1/2√5");
    }
}
