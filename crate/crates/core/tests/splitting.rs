use proptest::prelude::*;

use sepsplit::enumerate::binomial;
use sepsplit::ground::{SetCollection, SetFamily, SubsetMask};
use sepsplit::rng::{random_subset, seeded};
use sepsplit::split::{
    build_2_splitting_randomized, build_interval_splitting, build_triple_splitter, count_simultaneous_splitters,
    is_n_splitting, is_splittable, splits, splitter_volume_by_size, triple_splittable_parity, volume_lower_bound,
    VolumeMode,
};

fn count(s: usize, t: usize, b: usize, k: usize) -> u64 {
    count_simultaneous_splitters(s, t, b, k).unwrap().count
}

#[test]
fn overlap_monotonicity_sweep() {
    for k in 2..=12 {
        for s in 1..k {
            for t in 1..=k - s {
                let counts: Vec<u64> = (0..=s.min(t)).map(|b| count(s, t, b, k)).collect();
                assert!(counts.windows(2).all(|w| w[0] <= w[1]), "s={s} t={t} k={k} {counts:?}");
            }
        }
    }
}

#[test]
fn disjoint_pairs_split_independently() {
    for k in 2..=12 {
        for s in 1..k {
            for t in 1..=k - s {
                // count(s, s, s, k) is the number of splitters of one s-set.
                let joint = count(s, t, 0, k) as u128 * (1u128 << k);
                assert_eq!(
                    joint,
                    count(s, s, s, k) as u128 * count(t, t, t, k) as u128,
                    "s={s} t={t} k={k}"
                );
                let min = (0..=s.min(t)).map(|b| count(s, t, b, k)).min().unwrap();
                assert_eq!(min, count(s, t, 0, k));
            }
        }
    }
}

#[test]
fn max_volume_at_half() {
    for k in (2..=12).step_by(2) {
        let vols: Vec<u128> = (0..=k).map(|a| splitter_volume_by_size(k, a)).collect();
        let max = *vols.iter().max().unwrap();
        assert_eq!(vols[k / 2], max, "k={k}");
        assert!(max <= 3 * binomial(k as u64, (k / 2) as u64), "k={k}");
        let b = volume_lower_bound(1, k, VolumeMode::Exact).unwrap();
        assert_eq!(b.max_volume, max);
    }
}

#[test]
fn volume_bound_sequence_increases() {
    let values: Vec<f64> = [4, 6, 8, 10, 12]
        .iter()
        .map(|&k| volume_lower_bound(1, k, VolumeMode::Exact).unwrap().value())
        .collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]), "{values:?}");
}

#[test]
fn accepted_families_respect_volume_bound() {
    for k in 2..=10 {
        let f = build_interval_splitting(k).unwrap();
        assert!(is_n_splitting(&f, 1).unwrap());
        let b = volume_lower_bound(1, k, VolumeMode::Exact).unwrap();
        assert!(f.len() as u128 >= b.min_family_size(), "k={k}");
    }
    for k in [4, 6, 8] {
        let b = volume_lower_bound(2, k, VolumeMode::Exact).unwrap();
        for seed in 0..3 {
            let r = build_2_splitting_randomized(k, seed, true).unwrap();
            assert!(is_n_splitting(&r.family, 2).unwrap());
            assert!(r.family.len() as u128 >= b.min_family_size(), "k={k} seed={seed}");
        }
    }
    // Random families over [5] that happen to be 2-splitting.
    let b = volume_lower_bound(2, 5, VolumeMode::Exact).unwrap();
    let mut rng = seeded(9);
    let mut accepted = 0;
    for _ in 0..300 {
        let f = SetFamily::from_members(5, (0..10).map(|_| random_subset(5, &mut rng))).unwrap();
        if is_n_splitting(&f, 2).unwrap() {
            accepted += 1;
            assert!(f.len() as u128 >= b.min_family_size());
        }
    }
    assert!(accepted > 0);
}

#[test]
fn random_triples_over_eight() {
    let mut rng = seeded(77);
    for _ in 0..100_000 {
        let v: Vec<SubsetMask> = (0..3).map(|_| random_subset(8, &mut rng)).collect();
        let brute = is_splittable(&SetCollection::new(v.clone()).unwrap())
            .unwrap()
            .is_some();
        assert_eq!(triple_splittable_parity(&v[0], &v[1], &v[2]).unwrap(), brute, "{v:?}");
        let built = build_triple_splitter(&v[0], &v[1], &v[2]).unwrap();
        assert_eq!(built.is_some(), brute);
        if let Some(a) = built {
            assert!(v.iter().all(|b| splits(&a, b).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn splitting_is_complement_invariant(a in 0u64..1 << 10, b in 0u64..1 << 10) {
        let a = SubsetMask::from_bits(10, a).unwrap();
        let b = SubsetMask::from_bits(10, b).unwrap();
        prop_assert_eq!(splits(&a, &b).unwrap(), splits(&a.complement(), &b).unwrap());
    }

    #[test]
    fn counts_symmetric_in_the_pair(k in 2usize..10, s in 0usize..100, t in 0usize..100, b in 0usize..100) {
        let (s, t) = (1 + s % k, 1 + t % k);
        let lo = (s + t).saturating_sub(k);
        let b = lo + b % (s.min(t) - lo + 1);
        prop_assert_eq!(count(s, t, b, k), count(t, s, b, k));
    }
}
