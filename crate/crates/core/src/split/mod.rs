//! Splitting: `A` splits `B` when `|A ∩ B|` is `⌊|B|/2⌋` or `⌈|B|/2⌉`.
//!
//! Splitting families, the interval construction, splittability of
//! collections (brute force, the closed form for two sets, the sector-parity
//! rule for three), volume counting, and randomized 2-splitting builds.

mod identities;
mod nsplit;
mod random;
mod triple;
mod volume;

pub use identities::counting_identities_check;
pub use nsplit::{find_n_splitting_violation, find_n_splitting_violation_with, is_n_splitting, is_n_splitting_with};
pub use random::{build_2_splitting_randomized, build_2_splitting_randomized_with, two_splitting_bounds};
pub use triple::{build_triple_splitter, triple_splittable_parity, VennSectors3};
pub use volume::{
    calibrated_split_constant, count_simultaneous_splitters, count_splittable_triples, split_probability,
    splitter_volume, splitter_volume_by_size, volume_lower_bound, volume_lower_bound_with, VolumeBound, VolumeMode,
    VolumeReport,
};

use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SetFamily, SubsetMask};
use crate::limits::Limits;

/// True iff `|A ∩ B|` is `⌊|B|/2⌋` or `⌈|B|/2⌉`.
pub fn splits(a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    a.same_k(b)?;
    Ok(splits_count(a.intersection_len(b), b.len()))
}

#[inline]
pub(crate) fn splits_count(inside: usize, size: usize) -> bool {
    (2 * inside).abs_diff(size) <= 1
}

#[inline]
pub(crate) fn splits_bits(a: u64, b: u64) -> bool {
    splits_count((a & b).count_ones() as usize, b.count_ones() as usize)
}

/// `{A_i : 1 <= i <= ⌈k/2⌉}` with `A_i = {i, ..., i + ⌈k/2⌉ - 1}`.
pub fn build_interval_splitting(k: usize) -> Result<SetFamily> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let h = k.div_ceil(2);
    SetFamily::from_members(k, (1..=h).map(|i| SubsetMask::from_elements(k, i..i + h).unwrap()))
}

pub fn is_splitting_family(family: &SetFamily) -> Result<bool> {
    is_splitting_family_with(family, &Limits::default())
}

/// Exhaustive sweep over all `2^k` subsets.
pub fn is_splitting_family_with(family: &SetFamily, limits: &Limits) -> Result<bool> {
    Ok(find_unsplit_set(family, limits)?.is_none())
}

/// The least subset of `[k]` split by no member, if any.
pub fn find_unsplit_set(family: &SetFamily, limits: &Limits) -> Result<Option<SubsetMask>> {
    let k = family.k();
    guard(
        "ground set for 2^k sweep",
        k as u128,
        limits.max_power_set_k.min(63) as u128,
    )?;
    let members = family.to_bits().expect("k <= 63");
    Ok((0..1u64 << k)
        .find(|&b| !members.iter().any(|&a| splits_bits(a, b)))
        .map(|b| SubsetMask::from_bits(k, b).unwrap()))
}

pub fn is_splittable(c: &SetCollection) -> Result<Option<SubsetMask>> {
    is_splittable_with(c, &Limits::default())
}

/// Least simultaneous splitter among subsets of the union, by exhaustive search.
pub fn is_splittable_with(c: &SetCollection, limits: &Limits) -> Result<Option<SubsetMask>> {
    let union: Vec<usize> = c.union().positions().collect();
    guard(
        "splittable union size",
        union.len() as u128,
        limits.max_union.min(63) as u128,
    )?;
    let compressed: Vec<u64> = c
        .sets()
        .iter()
        .map(|b| {
            union
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &p)| acc | ((b.bit(p) as u64) << i))
        })
        .collect();
    Ok((0..1u64 << union.len())
        .find(|&a| compressed.iter().all(|&b| splits_bits(a, b)))
        .map(|a| {
            let mut mask = SubsetMask::empty(c.k());
            for (i, &p) in union.iter().enumerate() {
                if (a >> i) & 1 == 1 {
                    mask.set_bit(p);
                }
            }
            mask
        }))
}

/// `D ∪ E ∪ F` with `D`, `E`, `F` the lowest `⌈|B1∩B2|/2⌉`, `⌊|B1\B2|/2⌋`,
/// `⌊|B2\B1|/2⌋` elements of `B1∩B2`, `B1\B2`, `B2\B1`.
pub fn build_pair_splitter(b1: &SubsetMask, b2: &SubsetMask) -> Result<SubsetMask> {
    b1.same_k(b2)?;
    let both = b1.intersection(b2);
    let only1 = b1.difference(b2);
    let only2 = b2.difference(b1);
    let d = both.lowest(both.len().div_ceil(2));
    let e = only1.lowest(only1.len() / 2);
    let f = only2.lowest(only2.len() / 2);
    Ok(d.union(&e).union(&f))
}
