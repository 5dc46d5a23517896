use rand::Rng;
use serde::Serialize;

use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SetFamily, SubsetMask};
use crate::limits::Limits;
use crate::report::BoundReport;
use crate::rng::{random_pair, random_subset, seeded};
use crate::separate::nsep::{all_pairs, ParityForest};
use crate::separate::{is_n_separating_with, separable_pair_collections};

/// A randomized build: the family, its bounds, and whether it was certified
/// by the exhaustive verifier.
#[derive(Debug, Clone)]
pub struct RandomizedBuild {
    pub family: SetFamily,
    pub bounds: BoundReport,
    pub certified: bool,
    /// Random subsets drawn, including repeats that were discarded.
    pub draws: u64,
}

/// Bounds for `n`-separating families over `[k]`.
///
/// `upper` is `2n·log2 k / (-log2(1 - 2^-n)) + 1`. `lower` is `2^n·log2 k`, the
/// growth rate of the lower bound with its constant set to 1; it is a scale
/// reference, not a certified bound for any particular `k`.
pub fn n_separating_bounds(n: usize, k: usize) -> Result<BoundReport> {
    if n == 0 || k == 0 {
        return Err(Error::domain("need n >= 1 and k >= 1"));
    }
    let log_k = (k as f64).log2();
    let p = (-(n as f64)).exp2();
    let upper = 2.0 * n as f64 * log_k / -(1.0 - p).log2() + 1.0;
    Ok(BoundReport {
        n,
        k,
        lower: Some(p.recip() * log_k),
        upper,
        achieved: None,
    })
}

pub fn build_n_separating_randomized(n: usize, k: usize, seed: u64, verify: bool) -> Result<RandomizedBuild> {
    build_n_separating_randomized_with(n, k, seed, verify, &Limits::default())
}

/// Draws uniform random subsets of `[k]` (see [`crate::rng`]) into a growing
/// family. Repeated draws are discarded.
///
/// * Verified: stops as soon as every separable collection of `n` pairs is
///   separated, then certifies with [`is_n_separating_with`]. Fails with
///   `RetryExhausted` if the family reaches `ceil(upper)` first.
/// * Unverified: stops at `ceil(upper)` members (or `2^k`, whichever is smaller).
pub fn build_n_separating_randomized_with(
    n: usize,
    k: usize,
    seed: u64,
    verify: bool,
    limits: &Limits,
) -> Result<RandomizedBuild> {
    let mut bounds = n_separating_bounds(n, k)?;
    let ceiling = bounds.ceiling();
    let mut rng = seeded(seed);
    let mut family = SetFamily::new(k)?;
    let mut draws = 0u64;

    if !verify {
        let available = if k < 64 { 1u128 << k } else { u128::MAX };
        let target = (ceiling as u128).min(available) as usize;
        while family.len() < target {
            family.insert(random_subset(k, &mut rng))?;
            draws += 1;
        }
        bounds.achieved = Some(family.len());
        return Ok(RandomizedBuild {
            family,
            bounds,
            certified: false,
            draws,
        });
    }

    let pairs = all_pairs(k);
    let mut tasks: Vec<Vec<usize>> = separable_pair_collections(k, n, limits)?;
    let mut separated = vec![false; pairs.len()];
    while !tasks.is_empty() {
        if family.len() >= ceiling {
            return Err(Error::RetryExhausted {
                attempts: draws,
                size: family.len(),
                ceiling,
            });
        }
        let a = random_subset(k, &mut rng);
        draws += 1;
        if !family.insert(a.clone())? {
            continue;
        }
        for (s, &(x, y)) in separated.iter_mut().zip(&pairs) {
            *s = a.bit(x) != a.bit(y);
        }
        tasks.retain(|t| !t.iter().all(|&p| separated[p]));
    }
    if !is_n_separating_with(&family, n, limits)? {
        return Err(Error::ConstructionBug(format!(
            "randomized family of size {} failed {n}-separating certification",
            family.len()
        )));
    }
    bounds.achieved = Some(family.len());
    Ok(RandomizedBuild {
        family,
        bounds,
        certified: true,
        draws,
    })
}

/// A uniformly random separable collection of `n` pairs over `[k]`, by
/// rejection: draw `n` independent uniform pairs until the pair graph is bipartite.
pub fn random_separable_pairs<R: Rng>(k: usize, n: usize, rng: &mut R) -> Result<SetCollection> {
    if k < 2 || n == 0 {
        return Err(Error::domain("need k >= 2 and n >= 1"));
    }
    loop {
        let mut forest = ParityForest::new(k);
        let mut ok = true;
        let mut sets = Vec::with_capacity(n);
        for _ in 0..n {
            let (x, y) = random_pair(k, rng);
            ok &= forest.add_edge(x, y);
            sets.push(SubsetMask::from_elements(k, [x + 1, y + 1])?);
        }
        if ok {
            return SetCollection::new(sets);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationEstimate {
    pub samples: usize,
    pub hits: usize,
    pub mean: f64,
    /// Binomial standard error `sqrt(mean·(1-mean)/samples)`.
    pub std_error: f64,
}

/// Monte-Carlo estimate of the probability that a uniform random subset of
/// `[k]` separates a random separable collection of `n` pairs.
pub fn estimate_separation_probability(n: usize, k: usize, samples: usize, seed: u64) -> Result<SeparationEstimate> {
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    guard("ground set for sampling", k as u128, 1 << 20)?;
    let mut rng = seeded(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let c = random_separable_pairs(k, n, &mut rng)?;
        let a = random_subset(k, &mut rng);
        if c.sets().iter().all(|b| a.intersection_len(b) == 1) {
            hits += 1;
        }
    }
    let mean = hits as f64 / samples as f64;
    Ok(SeparationEstimate {
        samples,
        hits,
        mean,
        std_error: (mean * (1.0 - mean) / samples as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separate::{is_n_separating, separates};

    #[test]
    fn bound_formula() {
        let b = n_separating_bounds(2, 8).unwrap();
        assert_eq!(b.ceiling(), 30);
        assert!(b.lower.unwrap() <= b.upper);
        for n in 1..=6 {
            for k in [1, 2, 3, 8, 100, 1 << 20] {
                let b = n_separating_bounds(n, k).unwrap();
                assert!(b.lower.unwrap() <= b.upper, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn verified_build_is_deterministic_and_within_ceiling() {
        let a = build_n_separating_randomized(2, 8, 1, true).unwrap();
        let b = build_n_separating_randomized(2, 8, 1, true).unwrap();
        assert_eq!(a.family.members(), b.family.members());
        assert!(a.certified);
        assert!(a.bounds.achieved.unwrap() <= 30);
        assert!(is_n_separating(&a.family, 2).unwrap());
    }

    #[test]
    fn smallest_build() {
        let r = build_n_separating_randomized(1, 2, 9, true).unwrap();
        let pair = SubsetMask::from_elements(2, [1, 2]).unwrap();
        assert!(r.family.iter().any(|a| separates(a, &pair).unwrap()));
    }

    #[test]
    fn unverified_build_reaches_the_ceiling() {
        let r = build_n_separating_randomized(3, 40, 4, false).unwrap();
        assert_eq!(r.family.len(), r.bounds.ceiling());
        assert!(!r.certified);
        // 2^k caps the size when the ground set is tiny.
        let tiny = build_n_separating_randomized(4, 2, 4, false).unwrap();
        assert_eq!(tiny.family.len(), 4);
    }

    #[test]
    fn random_pairs_are_separable() {
        let mut rng = seeded(2);
        for _ in 0..200 {
            let c = random_separable_pairs(5, 4, &mut rng).unwrap();
            assert!(
                crate::separate::is_separable(&c, crate::separate::SeparabilityMode::Pairs)
                    .unwrap()
                    .is_separable()
            );
        }
    }

    #[test]
    fn estimate_respects_probability_floor() {
        let e = estimate_separation_probability(3, 16, 1000, 17).unwrap();
        assert!(e.mean >= 0.125 - 3.0 * e.std_error, "{e:?}");
    }
}
