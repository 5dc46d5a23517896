use crate::enumerate::{binomial, k_subsets, Compressor};
use crate::error::{guard, Error, Result};
use crate::ground::{SetFamily, SubsetMask};
use crate::limits::Limits;

pub fn is_ij_separating(family: &SetFamily, i: usize, j: usize) -> Result<bool> {
    is_ij_separating_with(family, i, j, &Limits::default())
}

pub fn is_ij_separating_with(family: &SetFamily, i: usize, j: usize, limits: &Limits) -> Result<bool> {
    Ok(find_ij_violation_with(family, i, j, limits)?.is_none())
}

pub fn find_ij_violation(family: &SetFamily, i: usize, j: usize) -> Result<Option<(SubsetMask, SubsetMask)>> {
    find_ij_violation_with(family, i, j, &Limits::default())
}

/// Disjoint `(P, Q)` with `|P| <= i`, `|Q| <= j` such that no member contains
/// one while missing the other.
///
/// Only `|P| = i`, `|Q| = j` is enumerated: if `A ⊇ P` and `A ∩ Q = ∅`, the
/// same `A` works for every `P' ⊆ P` and `Q' ⊆ Q`, so a violation at smaller
/// sizes extends to one at full sizes (room exists since `i + j <= k`).
pub fn find_ij_violation_with(
    family: &SetFamily,
    i: usize,
    j: usize,
    limits: &Limits,
) -> Result<Option<(SubsetMask, SubsetMask)>> {
    let k = family.k();
    if i + j > k {
        return Err(Error::domain(format!("need i + j <= k, got i={i}, j={j}, k={k}")));
    }
    guard(
        "ground set for (i,j) enumeration",
        k as u128,
        limits.max_power_set_k.min(63) as u128,
    )?;
    let cost = binomial(k as u64, i as u64)
        .saturating_mul(binomial((k - i) as u64, j as u64))
        .saturating_mul(family.len().max(1) as u128);
    guard("(i,j)-separating evaluations", cost, limits.max_evaluations)?;
    let members = family.to_bits().expect("k <= 63");
    let full = (1u64 << k) - 1;
    for p in k_subsets(k, i) {
        let rest = Compressor::new(full & !p);
        for q in k_subsets(k - i, j).map(|q| rest.expand(q)) {
            let ok = members
                .iter()
                .any(|&a| (a & p == p && a & q == 0) || (a & q == q && a & p == 0));
            if !ok {
                return Ok(Some((
                    SubsetMask::from_bits(k, p).unwrap(),
                    SubsetMask::from_bits(k, q).unwrap(),
                )));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_subset, seeded};

    /// Oracle over every size pair `|P| <= i`, `|Q| <= j`.
    fn ij_by_definition(f: &SetFamily, i: usize, j: usize) -> bool {
        let k = f.k();
        let bits = f.to_bits().unwrap();
        for p in 0..1u64 << k {
            if p.count_ones() as usize > i {
                continue;
            }
            for q in 0..1u64 << k {
                if q & p != 0 || q.count_ones() as usize > j {
                    continue;
                }
                if !bits
                    .iter()
                    .any(|&a| (a & p == p && a & q == 0) || (a & q == q && a & p == 0))
                {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn spec_examples() {
        assert!(is_ij_separating(&SetFamily::uniform(4, 1).unwrap(), 1, 1).unwrap());
        let empty_only = SetFamily::from_members(2, [SubsetMask::empty(2)]).unwrap();
        assert!(!is_ij_separating(&empty_only, 1, 1).unwrap());
    }

    #[test]
    fn two_subsets_of_six() {
        let f = SetFamily::uniform(6, 2).unwrap();
        // A = P itself works whenever |P| = 2.
        assert!(is_ij_separating(&f, 2, 2).unwrap());
        assert!(is_ij_separating(&f, 2, 1).unwrap());
        assert!(!is_ij_separating(&f, 3, 3).unwrap());
        assert!(!is_ij_separating(&SetFamily::uniform(6, 1).unwrap(), 2, 2).unwrap());
        assert!(ij_by_definition(&f, 2, 2));
    }

    #[test]
    fn size_reduction_matches_definition() {
        let mut rng = seeded(21);
        for t in 0..300 {
            let k = 3 + t % 4;
            let m = 1 + t % 9;
            let f = SetFamily::from_members(k, (0..m).map(|_| random_subset(k, &mut rng))).unwrap();
            for i in 0..=k {
                for j in 0..=k - i {
                    assert_eq!(
                        is_ij_separating(&f, i, j).unwrap(),
                        ij_by_definition(&f, i, j),
                        "{f:?} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_oversized_parameters() {
        let f = SetFamily::uniform(4, 1).unwrap();
        assert!(matches!(is_ij_separating(&f, 3, 2), Err(Error::Domain(_))));
    }
}
