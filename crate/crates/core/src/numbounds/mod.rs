//! Closed-form bounds and number-theoretic helpers: the ⌈4ek⌉ upper bound on
//! ℤ, χ^k for the symmetric variant together with the product coloring that
//! realizes it on ℤ, lattice shell counts, the 2-adic property (*), and
//! rational-to-integer scaling of arrays on the line.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DistanceToken, PeriodicColoring, RestrictionArray, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub quantity: &'static str,
    pub k: u64,
    pub chi: Option<u64>,
    pub value: BigUint,
}

/// The upper bounds available for a given k: ⌈4ek⌉ always, and χ^k when
/// a chromatic number χ is supplied.
pub fn bound_reports(k: u64, chi: Option<u64>) -> Result<Vec<BoundReport>> {
    let mut out = vec![BoundReport {
        quantity: "archer-upper",
        k,
        chi: None,
        value: BigUint::from(archer_bound(k)?),
    }];
    if let Some(chi) = chi {
        let exp = u32::try_from(k).map_err(|_| Error::Overflow)?;
        out.push(BoundReport {
            quantity: "symmetric-power",
            k,
            chi: Some(chi),
            value: power_bound(chi, exp)?,
        });
    }
    Ok(out)
}

/// Rational enclosure `lo < e < hi` from the first `terms + 1` terms of
/// Σ 1/i!, using the tail bound Σ_{i>N} 1/i! < 1/(N!·N).
fn e_enclosure(terms: u32) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut factorial = BigInt::one();
    for i in 0..=terms {
        if i > 0 {
            factorial *= BigInt::from(i);
        }
        sum += BigRational::new(BigInt::one(), factorial.clone());
    }
    let tail = BigRational::new(BigInt::one(), factorial * BigInt::from(terms));
    let hi = &sum + tail;
    (sum, hi)
}

fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// ⌈4ek⌉, evaluated on a rational enclosure of e that is refined until both
/// ends round up to the same integer.
pub fn archer_bound(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::NonpositiveParameter("k"));
    }
    let scale = BigRational::from_integer(BigInt::from(4u64) * BigInt::from(k));
    let mut terms = 24;
    loop {
        let (lo, hi) = e_enclosure(terms);
        let (a, b) = (ceil(&(&lo * &scale)), ceil(&(&hi * &scale)));
        if a == b {
            return u64::try_from(a).map_err(|_| Error::Overflow);
        }
        terms *= 2;
    }
}

/// χ^k, the symmetric-variant bound for a space of chromatic number χ.
pub fn power_bound(chi: u64, k: u32) -> Result<BigUint> {
    if chi == 0 {
        return Err(Error::NonpositiveParameter("chi"));
    }
    if k == 0 {
        return Err(Error::NonpositiveParameter("k"));
    }
    Ok(BigUint::from(chi).pow(k))
}

fn dedup_in_order(distances: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(distances.len());
    for &d in distances {
        if !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// Colors x by the bits ⌊x/d_i⌋ mod 2 (bit i for the i-th distinct
/// distance), giving color 1 + Σ bit_i·2^i with period 2·lcm(d_i).
pub fn product_coloring(distances: &[u64]) -> Result<PeriodicColoring> {
    if distances.is_empty() {
        return Err(Error::InvalidParameter("empty distance list".into()));
    }
    if distances.contains(&0) {
        return Err(Error::NonpositiveDistance);
    }
    let ds = dedup_in_order(distances);
    if ds.len() > 31 {
        return Err(Error::Overflow);
    }
    let lcm = ds
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d / acc.gcd(&d)))
        .ok_or(Error::Overflow)?;
    let period = lcm.checked_mul(2).ok_or(Error::Overflow)?;
    let period = usize::try_from(period).map_err(|_| Error::Overflow)?;
    let residues = (0..period as u64)
        .map(|x| {
            1 + ds
                .iter()
                .enumerate()
                .map(|(i, d)| (((x / d) % 2) as u32) << i)
                .sum::<u32>()
        })
        .collect();
    PeriodicColoring::new(residues)
}

/// The k′×2^k′ array over ℤ whose every column is the distinct distances.
pub fn symmetric_array(distances: &[u64]) -> Result<RestrictionArray> {
    let ds = dedup_in_order(distances);
    if ds.is_empty() || ds.len() > 31 {
        return Err(Error::InvalidParameter("need 1..=31 distances".into()));
    }
    let column: &[u64] = &ds;
    let columns = vec![column; 1 << ds.len()];
    RestrictionArray::from_integers(crate::lattice::Space::line(), &columns)
}

/// |{z ∈ ℤⁿ : Σ z_i² = d}|, counted by recursion on the first coordinate
/// over z ≥ 0 with ±z folded into a factor of two.
pub fn shell_count(n: usize, d: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NonpositiveParameter("dimension"));
    }
    if d == 0 {
        return Err(Error::NonpositiveParameter("squared distance"));
    }
    Ok(representations(n, d))
}

fn representations(n: usize, d: u64) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    let mut total = 0;
    let mut z = 0u64;
    while z * z <= d {
        let weight = if z == 0 { 1 } else { 2 };
        total += weight * representations(n - 1, d - z * z);
        z += 1;
    }
    total
}

/// Whether √d belongs to R_N, the distances with at most `cap` lattice
/// points on the shell.
pub fn in_r_n(n: usize, cap: u64, d: u64) -> Result<bool> {
    Ok(shell_count(n, d)? <= cap)
}

pub fn two_adic_valuation(d: u64) -> Result<u32> {
    if d == 0 {
        return Err(Error::NonpositiveParameter("d"));
    }
    Ok(d.trailing_zeros())
}

/// Property (*) for a 1×m array (√d_1, …, √d_m) on Euclidean ℤ²: the
/// 2-adic valuations of the d_j are pairwise distinct.
pub fn star_property(array: &RestrictionArray) -> Result<bool> {
    let space = array.space();
    if !(space.dim() == 2 && space.uses_squared_tokens()) {
        return Err(Error::InvalidParameter(format!(
            "property (*) needs an array over Euclidean Z^2, got {space}"
        )));
    }
    if array.rows() != 1 {
        return Err(Error::InvalidParameter(format!(
            "property (*) needs a 1xm array, got {} rows",
            array.rows()
        )));
    }
    let mut seen = Vec::with_capacity(array.colors());
    for column in array.columns() {
        let token = column[0];
        if token.kind() != TokenKind::Squared {
            return Err(Error::IncompatibleToken {
                kind: token.kind(),
                space: *space,
            });
        }
        let v = two_adic_valuation(token.numer())?;
        if seen.contains(&v) {
            return Ok(false);
        }
        seen.push(v);
    }
    Ok(true)
}

/// Multiply a rational array on the line by L = lcm of its denominators.
/// A coloring g of ℤ for the result colors (1/L)ℤ for the input via
/// x/L ↦ g(x).
pub fn scale_to_integers(array: &RestrictionArray) -> Result<(RestrictionArray, u64)> {
    if !array.space().is_line() {
        return Err(Error::InvalidParameter(format!(
            "scaling applies to arrays on the line, got {}",
            array.space()
        )));
    }
    let lcm = array
        .tokens()
        .try_fold(1u64, |acc, t| {
            acc.checked_mul(t.denom() / acc.gcd(&t.denom()))
        })
        .ok_or(Error::Overflow)?;
    let columns = array
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .map(|t| {
                    let v = (t.numer().checked_mul(lcm).ok_or(Error::Overflow)?) / t.denom();
                    DistanceToken::integer(v)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((RestrictionArray::new(*array.space(), columns)?, lcm))
}
