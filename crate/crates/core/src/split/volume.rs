use serde::Serialize;

use crate::enumerate::binomial;
use crate::error::{guard, Error, Result};
use crate::ground::SubsetMask;
use crate::limits::Limits;
use crate::split::{splits_bits, splits_count};

/// Number of subsets of `[k]` splitting both of two sets with sizes `s`, `t`
/// and overlap `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub s: usize,
    pub t: usize,
    pub b: usize,
    pub k: usize,
    pub count: u64,
}

/// The canonical pair: `S = {1..s}`, `T = {s-b+1 .. s-b+t}`, as bit masks.
pub(crate) fn canonical_pair(s: usize, t: usize, b: usize, k: usize) -> Result<(u64, u64)> {
    if s > k || t > k || b > s.min(t) || s + t - b > k {
        return Err(Error::domain(format!("inconsistent sizes s={s} t={t} b={b} k={k}")));
    }
    let low = |n: usize| if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    Ok((low(s), low(t) << (s - b)))
}

/// Counts splitters of `sets` among all subsets of `[k]`.
pub(crate) fn count_splitters(k: usize, sets: &[u64], limits: &Limits) -> Result<u64> {
    guard(
        "ground set for 2^k sweep",
        k as u128,
        limits.max_power_set_k.min(40) as u128,
    )?;
    Ok((0..1u64 << k)
        .filter(|&a| sets.iter().all(|&b| splits_bits(a, b)))
        .count() as u64)
}

pub fn count_simultaneous_splitters(s: usize, t: usize, b: usize, k: usize) -> Result<VolumeReport> {
    let (sm, tm) = canonical_pair(s, t, b, k)?;
    let count = count_splitters(k, &[sm, tm], &Limits::default())?;
    Ok(VolumeReport { s, t, b, k, count })
}

/// Number of ordered `n`-collections of subsets of `[k]` split by `a`: the
/// single-set count to the power `n`, since each coordinate is independent.
pub fn splitter_volume(a: &SubsetMask, n: usize) -> Result<u128> {
    let k = a.k();
    guard(
        "ground set for 2^k sweep",
        k as u128,
        Limits::default().max_power_set_k as u128,
    )?;
    let bits = a.to_bits().expect("k <= 24");
    let single = (0..1u64 << k).filter(|&b| splits_bits(bits, b)).count() as u128;
    single
        .checked_pow(n as u32)
        .ok_or_else(|| Error::domain("volume exceeds 128-bit range"))
}

/// Closed form of the single-set volume of any `a`-element subset of `[k]`.
pub fn splitter_volume_by_size(k: usize, a: usize) -> u128 {
    let mut total = 0u128;
    for i in 0..=a {
        for j in 0..=k - a {
            if splits_count(i, i + j) {
                total += binomial(a as u64, i as u64) * binomial((k - a) as u64, j as u64);
            }
        }
    }
    total
}

/// Probability that a uniform random subset of `[t]` splits `[t]`.
pub fn split_probability(t: usize) -> f64 {
    let hits: u128 = (0..=t)
        .filter(|&i| splits_count(i, t))
        .map(|i| binomial(t as u64, i as u64))
        .sum();
    hits as f64 / (t as f64).exp2()
}

/// `min over 1 <= t <= t_max of sqrt(t) · split_probability(t)` and the
/// minimizing `t`. With `t_max = 20` the minimum is at `t = 2`: `c = √2/2`.
pub fn calibrated_split_constant(t_max: usize) -> (f64, usize) {
    (1..=t_max.max(1))
        .map(|t| ((t as f64).sqrt() * split_probability(t), t))
        .fold((f64::INFINITY, 0), |best, cur| if cur.0 < best.0 { cur } else { best })
}

/// Ordered triples of subsets of `[k]` that are simultaneously splittable,
/// counted with the sector-parity rule.
pub fn count_splittable_triples(k: usize, limits: &Limits) -> Result<u128> {
    guard("triple census size", 1u128 << (3 * k.min(40)), limits.max_evaluations)?;
    let mut unsplittable = 0u128;
    for x in 0..1u64 << k {
        for y in 0..1u64 << k {
            for z in 0..1u64 << k {
                let outer = (x & !y & !z) | (!x & y & !z) | (!x & !y & z) | (x & y & z);
                if outer == 0
                    && (x & y & !z).count_ones() % 2 == 1
                    && (x & !y & z).count_ones() % 2 == 1
                    && (!x & y & z).count_ones() % 2 == 1
                {
                    unsplittable += 1;
                }
            }
        }
    }
    Ok((1u128 << (3 * k)) - unsplittable)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VolumeMode {
    /// Volumes by enumeration; for `n = 3` the exact count of splittable triples.
    Exact,
    /// Volumes by binomial sums; for `n = 3` the bound `N >= (2^k)^3 / 2`.
    ClosedForm,
}

/// The volume bound `N / v`: `N` collections must each be completed by a
/// member, and no member completes more than `v` of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeBound {
    pub n: usize,
    pub k: usize,
    pub mode: VolumeMode,
    /// `N`: (a lower bound on) the number of splittable ordered collections.
    pub collections: u128,
    /// `v`: the largest volume of a single splitter.
    pub max_volume: u128,
    /// A size `|A|` attaining `v`.
    pub argmax_size: usize,
}

impl VolumeBound {
    pub fn value(&self) -> f64 {
        self.collections as f64 / self.max_volume as f64
    }

    /// `ceil(N / v)`, a lower bound on the size of any `n`-splitting family.
    pub fn min_family_size(&self) -> u128 {
        self.collections.div_ceil(self.max_volume)
    }
}

pub fn volume_lower_bound(n: usize, k: usize, mode: VolumeMode) -> Result<VolumeBound> {
    volume_lower_bound_with(n, k, mode, &Limits::default())
}

pub fn volume_lower_bound_with(n: usize, k: usize, mode: VolumeMode, limits: &Limits) -> Result<VolumeBound> {
    if !(1..=3).contains(&n) || k == 0 {
        return Err(Error::domain(format!(
            "volume bound needs 1 <= n <= 3 and k >= 1, got n={n} k={k}"
        )));
    }
    let too_big = || Error::domain("value exceeds 128-bit range");
    let mut best = (0u128, 0usize);
    for a in 0..=k {
        let single = match mode {
            VolumeMode::Exact => {
                let rep =
                    SubsetMask::from_bits(k, if a == 0 { 0 } else { u64::MAX >> (64 - a) }).map_err(|_| too_big())?;
                guard(
                    "ground set for 2^k sweep",
                    k as u128,
                    limits.max_power_set_k.min(40) as u128,
                )?;
                splitter_volume(&rep, 1)?
            }
            VolumeMode::ClosedForm => splitter_volume_by_size(k, a),
        };
        let v = single.checked_pow(n as u32).ok_or_else(too_big)?;
        if v > best.0 {
            best = (v, a);
        }
    }
    let all = 1u128
        .checked_shl((k * n) as u32)
        .filter(|_| k * n < 128)
        .ok_or_else(too_big)?;
    let collections = match (n, mode) {
        (3, VolumeMode::Exact) => count_splittable_triples(k, limits)?,
        (3, VolumeMode::ClosedForm) => all / 2,
        _ => all,
    };
    Ok(VolumeBound {
        n,
        k,
        mode,
        collections,
        max_volume: best.0,
        argmax_size: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_permutation, seeded};

    /// Closed-form oracle: choose how many elements of each Venn region go into A.
    fn count_oracle(s: usize, t: usize, b: usize, k: usize) -> u64 {
        let mut total = 0u128;
        for i in 0..=b {
            for j in 0..=s - b {
                for l in 0..=t - b {
                    if splits_count(i + j, s) && splits_count(i + l, t) {
                        total += binomial(b as u64, i as u64)
                            * binomial((s - b) as u64, j as u64)
                            * binomial((t - b) as u64, l as u64);
                    }
                }
            }
        }
        (total << (k - (s + t - b))) as u64
    }

    #[test]
    fn spec_examples() {
        assert_eq!(count_simultaneous_splitters(2, 2, 0, 4).unwrap().count, 4);
        assert_eq!(count_simultaneous_splitters(2, 2, 2, 4).unwrap().count, 8);
        let sweep: Vec<u64> = (0..=2)
            .map(|b| count_simultaneous_splitters(2, 2, b, 4).unwrap().count)
            .collect();
        assert_eq!(sweep, [4, 4, 8]);
        assert!(count_simultaneous_splitters(3, 3, 0, 5).is_err());
    }

    #[test]
    fn counts_match_closed_form() {
        for k in 1..=10 {
            for s in 0..=k {
                for t in 0..=k {
                    for b in 0..=s.min(t) {
                        if s + t - b > k {
                            continue;
                        }
                        assert_eq!(
                            count_simultaneous_splitters(s, t, b, k).unwrap().count,
                            count_oracle(s, t, b, k),
                            "s={s} t={t} b={b} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn counts_are_relabeling_invariant() {
        let mut rng = seeded(12);
        for _ in 0..50 {
            let (s, t, b, k) = (3, 4, 2, 8);
            let (sm, tm) = canonical_pair(s, t, b, k).unwrap();
            let perm = random_permutation(k, &mut rng);
            let move_bits = |m: u64| {
                (0..k)
                    .filter(|&i| (m >> i) & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << (perm[i] - 1))
            };
            let relabeled = count_splitters(k, &[move_bits(sm), move_bits(tm)], &Limits::default()).unwrap();
            assert_eq!(relabeled, count_simultaneous_splitters(s, t, b, k).unwrap().count);
        }
    }

    #[test]
    fn volume_examples() {
        assert_eq!(
            splitter_volume(&SubsetMask::from_elements(2, [1]).unwrap(), 1).unwrap(),
            4
        );
        for k in [4, 6, 8] {
            for a in 0..=k {
                let rep = SubsetMask::from_elements(k, 1..=a).unwrap();
                let v1 = splitter_volume(&rep, 1).unwrap();
                assert_eq!(v1, splitter_volume_by_size(k, a));
                assert_eq!(splitter_volume(&rep, 2).unwrap(), v1 * v1);
            }
        }
        let b = volume_lower_bound(1, 4, VolumeMode::Exact).unwrap();
        assert_eq!(b.argmax_size, 2);
        assert!(b.max_volume <= 3 * 6);
    }

    #[test]
    fn splittable_triple_count_matches_parity_formula() {
        for k in 1..=5usize {
            let all = 1i128 << (3 * k);
            // Words over {ab, ac, bc, outside} with three odd letter counts.
            let unsplittable = (4i128.pow(k as u32) - 3 * 2i128.pow(k as u32) - (-2i128).pow(k as u32)) / 8;
            assert_eq!(
                count_splittable_triples(k, &Limits::default()).unwrap() as i128,
                all - unsplittable,
                "k={k}"
            );
        }
    }

    #[test]
    fn calibrated_constant() {
        let (c, t) = calibrated_split_constant(20);
        assert_eq!(t, 2);
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(split_probability(3), 0.75);
    }

    #[test]
    fn modes_agree_for_small_n() {
        for n in 1..=2 {
            for k in 1..=10 {
                let e = volume_lower_bound(n, k, VolumeMode::Exact).unwrap();
                let c = volume_lower_bound(n, k, VolumeMode::ClosedForm).unwrap();
                assert_eq!((e.collections, e.max_volume), (c.collections, c.max_volume));
            }
        }
        assert!(volume_lower_bound(4, 4, VolumeMode::Exact).is_err());
    }
}
