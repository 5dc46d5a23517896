//! Separation: predicates, recognizers, constructions, randomized builders, the
//! `(i, j)`-separating lattice, and the bridge to Hamming codes.
//!
//! `A` separates `B` when `B` meets both `A` and its complement. A family is
//! separating when every `B` with `|B| >= 2` is separated by some member, which
//! reduces to separating every pair, which in turn is equivalent to the matrix
//! representation having pairwise distinct columns.

mod hamming;
mod ij;
mod implications;
mod nsep;
mod random;
mod separable;

pub use hamming::{column_distance_range, min_pairwise_column_distance};
pub use ij::{find_ij_violation, find_ij_violation_with, is_ij_separating, is_ij_separating_with};
pub use implications::{check_implication, check_implication_with, implication_suite, Implication, StressPlan};
pub use nsep::{
    find_n_separating_violation, find_n_separating_violation_with, is_n_separating, is_n_separating_with,
    separable_pair_collections,
};
pub use random::{
    build_n_separating_randomized, build_n_separating_randomized_with, estimate_separation_probability,
    n_separating_bounds, random_separable_pairs, RandomizedBuild, SeparationEstimate,
};
pub use separable::{
    is_separable, is_separable_with, pair_bipartition, SeparabilityMode, SeparationWitness, Unseparable,
};

use crate::error::{Error, Result};
use crate::ground::{family_to_matrix, SetFamily, SubsetMask};

/// `A ∩ B ≠ ∅` and `Aᶜ ∩ B ≠ ∅`.
pub fn separates(a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    a.same_k(b)?;
    let inside = a.intersection_len(b);
    Ok(inside > 0 && inside < b.len())
}

/// Linear-time recognition: radix-sort the columns of the matrix
/// representation and compare neighbours.
pub fn is_separating_family(family: &SetFamily) -> bool {
    find_unseparated_pair(family).is_none()
}

/// A pair `{x, y}` (1-based, `x < y`) that no member separates, if any.
pub fn find_unseparated_pair(family: &SetFamily) -> Option<(usize, usize)> {
    match family_to_matrix(family) {
        Ok(m) => m.find_equal_columns().map(|(a, b)| (a + 1, b + 1)),
        // No rows: every column is the empty vector.
        Err(_) => (family.k() >= 2).then_some((1, 2)),
    }
}

/// `ceil(log2 k)` for `k >= 1`.
pub fn ceil_log2(k: usize) -> usize {
    assert!(k >= 1);
    (usize::BITS - (k - 1).leading_zeros()) as usize
}

/// A separating family of exactly `ceil(log2 k)` sets.
///
/// Column `j` of the matrix (1-based) is the `m`-bit number `2^m - j`, i.e. the
/// bitwise complement of `j - 1`, with row 1 the most significant bit. For
/// `k = 8` this gives `{1,2,3,4}, {1,2,5,6}, {1,3,5,7}`.
pub fn build_min_separating(k: usize) -> Result<SetFamily> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let m = ceil_log2(k);
    let mut rows = vec![SubsetMask::empty(k); m];
    for j in 1..=k {
        let value = (1usize << m) - j;
        for (i, row) in rows.iter_mut().enumerate() {
            if (value >> (m - 1 - i)) & 1 == 1 {
                row.set_bit(j - 1);
            }
        }
    }
    SetFamily::from_members(k, rows)
}

/// `F ∪ {A △ B : A, B ∈ F, A ≠ B}` without repeats or the empty set.
///
/// Symmetric differences are appended in member order `(0,1), (0,2), ..., (1,2), ...`.
pub fn build_2_separating(family: &SetFamily) -> Result<SetFamily> {
    if let Some((x, y)) = find_unseparated_pair(family) {
        return Err(Error::precondition(format!(
            "input is not separating: pair {{{x},{y}}} is not separated"
        )));
    }
    let members = family.members();
    let mut out = SetFamily::new(family.k())?;
    for m in members {
        if !m.is_empty() {
            out.insert(m.clone())?;
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let d = a.symmetric_difference(b);
            if !d.is_empty() {
                out.insert(d)?;
            }
        }
    }
    Ok(out)
}
