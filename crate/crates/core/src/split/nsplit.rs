use crate::enumerate::multisets;
use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SetFamily, SubsetMask};
use crate::limits::Limits;
use crate::split::{is_splittable_with, splits_bits, triple_splittable_parity};

pub fn is_n_splitting(family: &SetFamily, n: usize) -> Result<bool> {
    is_n_splitting_with(family, n, &Limits::default())
}

pub fn is_n_splitting_with(family: &SetFamily, n: usize, limits: &Limits) -> Result<bool> {
    Ok(find_n_splitting_violation_with(family, n, limits)?.is_none())
}

pub fn find_n_splitting_violation(family: &SetFamily, n: usize) -> Result<Option<SetCollection>> {
    find_n_splitting_violation_with(family, n, &Limits::default())
}

/// A splittable collection of `n` subsets of `[k]` with no simultaneous
/// splitter in the family.
///
/// Sets of size at most 1 are split by everything, so only sets with `|B| >= 2`
/// are enumerated, as nondecreasing multisets; a short violating prefix is
/// padded with empty sets. Splittability of a prefix: always for one or two
/// sets, sector parity for three, exhaustive search beyond. An empty family
/// fails on the all-empty collection.
pub fn find_n_splitting_violation_with(family: &SetFamily, n: usize, limits: &Limits) -> Result<Option<SetCollection>> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let k = family.k();
    let cap = limits.max_nsplit_k[n.min(3) - 1].min(63);
    guard("ground set for n-splitting check", k as u128, cap as u128)?;
    let candidates: Vec<u64> = (0..1u64 << k).filter(|b| b.count_ones() >= 2).collect();
    guard(
        "n-splitting evaluations",
        multisets(candidates.len() as u64, n as u64).saturating_mul(family.len().max(1).div_ceil(64) as u128),
        limits.max_evaluations,
    )?;
    let pad = |sets: &[u64]| {
        let mut v: Vec<SubsetMask> = sets.iter().map(|&b| SubsetMask::from_bits(k, b).unwrap()).collect();
        v.resize(n, SubsetMask::empty(k));
        SetCollection::new(v).unwrap()
    };
    if family.is_empty() {
        return Ok(Some(pad(&[])));
    }
    let members = family.to_bits().expect("k <= 63");
    let words = members.len().div_ceil(64);
    let split_by: Vec<Vec<u64>> = candidates
        .iter()
        .map(|&b| {
            let mut w = vec![0u64; words];
            for (i, &a) in members.iter().enumerate() {
                if splits_bits(a, b) {
                    w[i >> 6] |= 1 << (i & 63);
                }
            }
            w
        })
        .collect();
    let mut search = Search {
        k,
        n,
        candidates: &candidates,
        split_by: &split_by,
        limits,
        path: Vec::with_capacity(n),
    };
    let full = vec![u64::MAX; words];
    if search.dfs(0, &full)? {
        return Ok(Some(pad(&search.path)));
    }
    Ok(None)
}

struct Search<'a> {
    k: usize,
    n: usize,
    candidates: &'a [u64],
    split_by: &'a [Vec<u64>],
    limits: &'a Limits,
    path: Vec<u64>,
}

impl Search<'_> {
    fn prefix_splittable(&self) -> Result<bool> {
        let masks = || self.path.iter().map(|&b| SubsetMask::from_bits(self.k, b).unwrap());
        match self.path.len() {
            0..=2 => Ok(true),
            3 => {
                let v: Vec<SubsetMask> = masks().collect();
                triple_splittable_parity(&v[0], &v[1], &v[2])
            }
            _ => Ok(is_splittable_with(&SetCollection::new(masks().collect())?, self.limits)?.is_some()),
        }
    }

    fn dfs(&mut self, start: usize, acc: &[u64]) -> Result<bool> {
        for idx in start..self.candidates.len() {
            let next: Vec<u64> = acc.iter().zip(&self.split_by[idx]).map(|(a, b)| a & b).collect();
            self.path.push(self.candidates[idx]);
            // Unsplittable prefixes have only unsplittable extensions.
            if self.prefix_splittable()? {
                if next.iter().all(|&w| w == 0) {
                    return Ok(true);
                }
                if self.path.len() < self.n && self.dfs(idx, &next)? {
                    return Ok(true);
                }
            }
            self.path.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::{build_interval_splitting, is_splittable, splits};

    #[test]
    fn examples() {
        assert!(is_n_splitting(&SetFamily::power_set(4).unwrap(), 2).unwrap());
        assert!(is_n_splitting(&build_interval_splitting(10).unwrap(), 1).unwrap());
        let v = find_n_splitting_violation(&build_interval_splitting(6).unwrap(), 2)
            .unwrap()
            .unwrap();
        assert_eq!(v.len(), 2);
        assert!(is_splittable(&v).unwrap().is_some());
        let f = build_interval_splitting(6).unwrap();
        assert!(f.iter().all(|a| !v.sets().iter().all(|b| splits(a, b).unwrap())));
    }

    #[test]
    fn empty_family_and_guards() {
        assert!(!is_n_splitting(&SetFamily::new(3).unwrap(), 1).unwrap());
        assert!(is_n_splitting(&SetFamily::power_set(7).unwrap(), 3)
            .unwrap_err()
            .is_guard());
        assert!(is_n_splitting(&SetFamily::power_set(2).unwrap(), 0).is_err());
    }

    #[test]
    fn power_sets_are_n_splitting() {
        for k in 1..=5 {
            let f = SetFamily::power_set(k).unwrap();
            for n in 1..=3 {
                assert!(is_n_splitting(&f, n).unwrap(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn single_splitting_matches_sweep() {
        for k in 2..=8 {
            let f = build_interval_splitting(k).unwrap();
            let without_last = SetFamily::from_members(k, f.members()[1..].iter().cloned()).unwrap();
            for g in [&f, &without_last] {
                if g.is_empty() {
                    continue;
                }
                assert_eq!(
                    is_n_splitting(g, 1).unwrap(),
                    crate::split::is_splitting_family(g).unwrap(),
                    "k={k}"
                );
            }
        }
    }
}
