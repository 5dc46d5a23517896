use crate::error::{guard, Error, Result};
use crate::ground::SetFamily;
use crate::limits::Limits;
use crate::report::BoundReport;
use crate::rng::{random_subset, seeded};
use crate::separate::RandomizedBuild;
use crate::split::{calibrated_split_constant, is_n_splitting_with, splits_bits, volume_lower_bound, VolumeMode};

/// Bounds for 2-splitting families over `[k]`.
///
/// `upper` is `2k / (-log2(1 - c²/k)) + 1` with `c` from
/// [`calibrated_split_constant`]`(20)`: a random set splits a fixed pair with
/// probability at least `c²/k`, and there are at most `2^(2k)` pairs. `lower`
/// is the closed-form volume bound `N / v`.
pub fn two_splitting_bounds(k: usize) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let (c, _) = calibrated_split_constant(20);
    let p = (c * c / k as f64).min(1.0);
    let upper = if p >= 1.0 {
        2.0
    } else {
        2.0 * k as f64 / -(1.0 - p).log2() + 1.0
    };
    let lower = volume_lower_bound(2, k, VolumeMode::ClosedForm).ok().map(|b| b.value());
    Ok(BoundReport {
        n: 2,
        k,
        lower,
        upper,
        achieved: None,
    })
}

pub fn build_2_splitting_randomized(k: usize, seed: u64, verify: bool) -> Result<RandomizedBuild> {
    build_2_splitting_randomized_with(k, seed, verify, &Limits::default())
}

/// Draws uniform random subsets of `[k]` into a growing family.
///
/// Verified mode tracks every unordered pair of sets with at least two
/// elements each, stops once all are split by some member, and certifies the
/// result with the exhaustive 2-splitting check. Unverified mode stops at the
/// ceiling of the upper bound.
pub fn build_2_splitting_randomized_with(
    k: usize,
    seed: u64,
    verify: bool,
    limits: &Limits,
) -> Result<RandomizedBuild> {
    let mut bounds = two_splitting_bounds(k)?;
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

    guard(
        "ground set for 2-splitting check",
        k as u128,
        limits.max_nsplit_k[1].min(16) as u128,
    )?;
    let sets: Vec<u64> = (0..1u64 << k).filter(|b| b.count_ones() >= 2).collect();
    let task_count = (sets.len() * (sets.len() + 1) / 2) as u128;
    guard("2-splitting tasks", task_count, limits.max_tasks)?;
    let mut tasks: Vec<(u32, u32)> = Vec::with_capacity(task_count as usize);
    for i in 0..sets.len() as u32 {
        for j in i..sets.len() as u32 {
            tasks.push((i, j));
        }
    }
    let mut split = vec![false; sets.len()];
    while !tasks.is_empty() || family.is_empty() {
        if family.len() >= ceiling {
            return Err(Error::RetryExhausted {
                attempts: draws,
                size: family.len(),
                ceiling,
            });
        }
        let a = random_subset(k, &mut rng);
        draws += 1;
        let bits = a.to_bits().expect("k <= 16");
        if !family.insert(a)? {
            continue;
        }
        for (flag, &b) in split.iter_mut().zip(&sets) {
            *flag = splits_bits(bits, b);
        }
        tasks.retain(|&(i, j)| !(split[i as usize] && split[j as usize]));
    }
    if !is_n_splitting_with(&family, 2, limits)? {
        return Err(Error::ConstructionBug(format!(
            "randomized family of size {} failed 2-splitting certification",
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
