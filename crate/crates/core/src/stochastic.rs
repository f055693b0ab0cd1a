//! Randomized coloring search by Moser–Tardos style resampling.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`. Stream 0
//! draws the initial coloring (one draw per point in window order); stream 1
//! drives resampling (two draws per resampled event, first endpoint first).
//! Colors are drawn with `rand`'s uniform range sampling, so outputs are
//! pinned to the `rand` 0.9 / `rand_chacha` 0.9 versions in the manifest.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Coloring, RestrictionArray, Window};
use crate::solver::{verify_coloring, window_adjacency};

const INITIAL_STREAM: u64 = 0;
const RESAMPLE_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResampleStats {
    pub seed: u64,
    pub resamples: u64,
    pub cap: u64,
    pub succeeded: bool,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Colors every window point independently and uniformly from `1..=m`.
pub fn random_coloring(window: &Window, m: usize, seed: u64) -> Result<Coloring> {
    if m == 0 {
        return Err(Error::NonpositiveParameter("color count"));
    }
    let m = u32::try_from(m).map_err(|_| Error::Overflow)?;
    let mut rng = rng_for(seed, INITIAL_STREAM);
    let colors = (0..window.len()).map(|_| rng.random_range(1..=m)).collect();
    Coloring::new(window.clone(), colors)
}

/// Resample until no monochromatic forbidden pair remains or `cap`
/// resamplings have been spent. Each step picks the violated pair that is
/// least in window order and redraws both endpoints.
pub fn moser_tardos(
    window: &Window,
    array: &RestrictionArray,
    seed: u64,
    cap: u64,
) -> Result<(Option<Coloring>, ResampleStats)> {
    if cap == 0 {
        return Err(Error::NonpositiveParameter("resample cap"));
    }
    if array.space() != window.space() {
        return Err(Error::SpaceMismatch {
            array: *array.space(),
            window: *window.space(),
        });
    }
    let m = array.colors();
    let adjacency = window_adjacency(window, array)?;
    let mut colors = random_coloring(window, m, seed)?.colors().to_vec();

    let mut violated: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (a, &c) in colors.iter().enumerate() {
        for &b in &adjacency[c as usize - 1][a] {
            if b as usize > a && colors[b as usize] == c {
                violated.insert((a as u32, b));
            }
        }
    }

    let mut rng = rng_for(seed, RESAMPLE_STREAM);
    let mut recolor = |x: usize, colors: &mut Vec<u32>, violated: &mut BTreeSet<(u32, u32)>| {
        let old = colors[x];
        for &y in &adjacency[old as usize - 1][x] {
            if colors[y as usize] == old {
                violated.remove(&ordered(x as u32, y));
            }
        }
        let new = rng.random_range(1..=m as u32);
        colors[x] = new;
        for &y in &adjacency[new as usize - 1][x] {
            if colors[y as usize] == new {
                violated.insert(ordered(x as u32, y));
            }
        }
    };

    let mut resamples = 0u64;
    while let Some(&(a, b)) = violated.first() {
        if resamples == cap {
            break;
        }
        recolor(a as usize, &mut colors, &mut violated);
        recolor(b as usize, &mut colors, &mut violated);
        resamples += 1;
    }

    let succeeded = violated.is_empty();
    let stats = ResampleStats {
        seed,
        resamples,
        cap,
        succeeded,
    };
    if !succeeded {
        return Ok((None, stats));
    }
    let coloring = Coloring::new(window.clone(), colors)?;
    assert!(
        verify_coloring(window, array, &coloring)?.is_clean(),
        "resampling returned an invalid coloring"
    );
    Ok((Some(coloring), stats))
}

fn ordered(x: u32, y: u32) -> (u32, u32) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Space;

    fn line(cols: &[&[u64]]) -> RestrictionArray {
        RestrictionArray::from_integers(Space::line(), cols).unwrap()
    }

    #[test]
    fn single_color_is_constant() {
        let w = Window::interval(0, 4).unwrap();
        let c = random_coloring(&w, 1, 99).unwrap();
        assert_eq!(c.colors(), &[1; 5]);
        assert!(random_coloring(&w, 0, 1).is_err());
    }

    #[test]
    fn coloring_is_deterministic() {
        let w = Window::interval(-20, 20).unwrap();
        assert_eq!(
            random_coloring(&w, 5, 42).unwrap(),
            random_coloring(&w, 5, 42).unwrap()
        );
        assert_ne!(
            random_coloring(&w, 5, 42).unwrap(),
            random_coloring(&w, 5, 43).unwrap()
        );
    }

    #[test]
    fn uniform_frequency() {
        let w = Window::interval(0, 9999).unwrap();
        let c = random_coloring(&w, 2, 1).unwrap();
        let ones = c.colors().iter().filter(|&&x| x == 1).count() as f64 / 10_000.0;
        assert!((ones - 0.5).abs() <= 0.02, "frequency {ones}");
    }

    #[test]
    fn alternating_instance_succeeds() {
        let w = Window::interval(0, 99).unwrap();
        let a = line(&[&[1], &[1]]);
        let (c, stats) = moser_tardos(&w, &a, 7, 100_000).unwrap();
        assert!(stats.succeeded);
        let c = c.unwrap();
        assert!(verify_coloring(&w, &a, &c).unwrap().is_clean());
        assert_eq!(moser_tardos(&w, &a, 7, 100_000).unwrap(), (Some(c), stats));
    }

    #[test]
    fn unsatisfiable_instance_hits_cap() {
        let w = Window::interval(0, 1).unwrap();
        let (c, stats) = moser_tardos(&w, &line(&[&[1]]), 3, 250).unwrap();
        assert!(c.is_none());
        assert_eq!(stats.resamples, 250);
        assert!(!stats.succeeded);
    }

    #[test]
    fn rejects_zero_cap_and_mismatch() {
        let w = Window::interval(0, 1).unwrap();
        assert!(moser_tardos(&w, &line(&[&[1]]), 3, 0).is_err());
        let z2 = Space::euclidean(2).unwrap();
        let a = RestrictionArray::from_squared(z2, &[&[1]]).unwrap();
        assert!(moser_tardos(&w, &a, 3, 10).is_err());
    }
}
