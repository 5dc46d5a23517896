use proptest::prelude::*;
use rand::Rng;

use sepsplit::enumerate::subsets_of;
use sepsplit::ground::{family_to_matrix, SetFamily, SubsetMask};
use sepsplit::rng::{random_subset, seeded};
use sepsplit::separate::{
    build_2_separating, build_n_separating_randomized, is_n_separating, is_separating_family,
    min_pairwise_column_distance, separates,
};

fn random_separating(k: usize, size: usize, seed: u64) -> SetFamily {
    let mut rng = seeded(seed);
    loop {
        let members: Vec<SubsetMask> = (0..size).map(|_| random_subset(k, &mut rng)).collect();
        let f = SetFamily::from_members(k, members).unwrap();
        if is_separating_family(&f) {
            return f;
        }
    }
}

/// Separating iff every set with at least two elements is separated, by brute force.
fn separating_by_definition(f: &SetFamily) -> bool {
    let k = f.k();
    (0..1u64 << k).filter(|b| b.count_ones() >= 2).all(|b| {
        let b = SubsetMask::from_bits(k, b).unwrap();
        f.iter().any(|a| separates(a, &b).unwrap())
    })
}

#[test]
fn pair_reduction_matches_definition() {
    let mut rng = seeded(5);
    for _ in 0..400 {
        let k = rng.gen_range(2..=8);
        let size = rng.gen_range(0..=5);
        let f = SetFamily::from_members(k, (0..size).map(|_| random_subset(k, &mut rng))).unwrap();
        assert_eq!(is_separating_family(&f), separating_by_definition(&f), "{f:?}");
    }
}

#[test]
fn two_separating_construction_on_random_inputs() {
    for seed in 0..30 {
        let k = 4 + (seed as usize % 5);
        let f = random_separating(k, 4, seed);
        let g = build_2_separating(&f).unwrap();
        assert!(is_n_separating(&g, 2).unwrap(), "seed={seed} {g:?}");
    }
}

fn certified_families(n: usize) -> Vec<SetFamily> {
    let mut out = Vec::new();
    let ks: Vec<usize> = match n {
        1 => (2..=10).collect(),
        2 => (3..=10).collect(),
        _ => (4..=7).collect(),
    };
    for &k in &ks {
        for seed in 0..4 {
            match n {
                1 => out.push(random_separating(k, sepsplit::separate::ceil_log2(k) + 1, seed)),
                2 => out.push(build_2_separating(&random_separating(k, 4, seed)).unwrap()),
                _ => {}
            }
            if let Ok(r) = build_n_separating_randomized(n, k, seed, true) {
                out.push(r.family);
            }
        }
    }
    out
}

#[test]
fn hamming_bridge_on_certified_families() {
    for n in 1..=3 {
        let families = certified_families(n);
        assert!(families.len() >= 10);
        for f in families {
            assert!(is_n_separating(&f, n).unwrap());
            let d = min_pairwise_column_distance(&family_to_matrix(&f).unwrap()).unwrap();
            assert!(d >= 1 << (n - 1), "n={n} d={d} {f:?}");
        }
    }
}

#[test]
fn restriction_claim_for_two_separating() {
    let mut families = certified_families(2);
    families.retain(|f| f.k() <= 8);
    assert!(!families.is_empty());
    for f in families {
        let k = f.k();
        for s in (0..1u64 << k).filter(|s| s.count_ones() == 3) {
            let traces: Vec<u64> = f.iter().map(|a| a.to_bits().unwrap() & s).collect();
            // T = ∅ or T = S needs a member meeting S in ∅ or S, which is not forced.
            for t in subsets_of(s).filter(|&t| t != 0 && t != s) {
                assert!(
                    traces.contains(&t) || traces.contains(&(s & !t)),
                    "S={s:b} T={t:b} {f:?}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn separating_survives_member_complement(seed in any::<u64>(), k in 2usize..10, idx in 0usize..4) {
        let f = random_separating(k, 4.max(sepsplit::separate::ceil_log2(k) + 1), seed);
        let i = idx % f.len();
        prop_assert!(is_separating_family(&f.complement_member(i).unwrap()));
    }

    #[test]
    fn two_separating_is_complement_invariant(seed in 0u64..200, idx in 0usize..8) {
        let f = build_2_separating(&random_separating(6, 3, seed)).unwrap();
        let i = idx % f.len();
        prop_assert!(is_n_separating(&f.complement_member(i).unwrap(), 2).unwrap());
    }
}
