//! Seeded randomness for the randomized builders and stress tests.
//!
//! All randomized routines use ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`. ChaCha output is specified bit-for-bit and is
//! independent of platform endianness and word size, so a seed reproduces the
//! same families everywhere. A uniform subset of `[k]` consumes
//! `ceil(k / 64)` successive `next_u64` outputs, low word first, with bits at
//! positions `>= k` discarded.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ground::SubsetMask;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random subset of `[k]`.
pub fn random_subset<R: RngCore>(k: usize, rng: &mut R) -> SubsetMask {
    let words: Vec<u64> = (0..k.div_ceil(64)).map(|_| rng.next_u64()).collect();
    SubsetMask::from_words(k, &words).expect("word count matches k")
}

/// A uniformly random pair `{x, y}` of distinct 0-based positions below `k`.
pub fn random_pair<R: Rng>(k: usize, rng: &mut R) -> (usize, usize) {
    assert!(k >= 2);
    let x = rng.gen_range(0..k);
    let mut y = rng.gen_range(0..k - 1);
    if y >= x {
        y += 1;
    }
    (x.min(y), x.max(y))
}

/// A uniformly random permutation of `1..=k` (Fisher–Yates).
pub fn random_permutation<R: Rng>(k: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<SubsetMask> = {
            let mut r = seeded(7);
            (0..5).map(|_| random_subset(100, &mut r)).collect()
        };
        let b: Vec<SubsetMask> = {
            let mut r = seeded(7);
            (0..5).map(|_| random_subset(100, &mut r)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.k() == 100));
    }

    #[test]
    fn pairs_are_distinct_and_ordered() {
        let mut r = seeded(1);
        for _ in 0..1000 {
            let (x, y) = random_pair(5, &mut r);
            assert!(x < y && y < 5);
        }
    }
}
