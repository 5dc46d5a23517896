use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(k: usize) -> usize {
    k.div_ceil(WORD)
}

/// A subset of the ground set `[k] = {1, ..., k}`, stored as a bit vector.
///
/// Elements are named 1-based on the outside; bit `j` (0-based) is set iff
/// element `j + 1` belongs to the set. Bits at positions `>= k` are always zero.
///
/// Masks order like unsigned integers with element 1 as the least significant
/// bit; "lexicographically least" witnesses everywhere in this crate refer to
/// this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    k: usize,
    words: SmallVec<[u64; 2]>,
}

impl SubsetMask {
    /// The empty subset of `[k]`. Panics if `k == 0`.
    pub fn empty(k: usize) -> Self {
        assert!(k > 0, "ground set must be nonempty");
        SubsetMask {
            k,
            words: SmallVec::from_elem(0, words_for(k)),
        }
    }

    /// The whole ground set `[k]`. Panics if `k == 0`.
    pub fn full(k: usize) -> Self {
        let mut m = Self::empty(k);
        for w in m.words.iter_mut() {
            *w = u64::MAX;
        }
        m.trim();
        m
    }

    /// Builds a subset from 1-based element names.
    pub fn from_elements<I: IntoIterator<Item = usize>>(k: usize, elements: I) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("ground set size must be positive"));
        }
        let mut m = Self::empty(k);
        for e in elements {
            if e == 0 || e > k {
                return Err(Error::domain(format!("element {e} is outside [1, {k}]")));
            }
            m.set_bit(e - 1);
        }
        Ok(m)
    }

    /// Builds a subset of `[k]` (`k <= 64`) from a machine word; bit 0 is element 1.
    pub fn from_bits(k: usize, bits: u64) -> Result<Self> {
        if k == 0 || k > WORD {
            return Err(Error::domain(format!("from_bits needs 0 < k <= 64, got {k}")));
        }
        if k < WORD && bits >> k != 0 {
            return Err(Error::domain(format!("bits {bits:#x} exceed ground set [{k}]")));
        }
        let mut m = Self::empty(k);
        m.words[0] = bits;
        Ok(m)
    }

    /// Builds a subset from raw words; excess high bits are cleared.
    pub fn from_words(k: usize, words: &[u64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("ground set size must be positive"));
        }
        if words.len() != words_for(k) {
            return Err(Error::domain(format!(
                "expected {} words for k = {k}, got {}",
                words_for(k),
                words.len()
            )));
        }
        let mut m = SubsetMask {
            k,
            words: SmallVec::from_slice(words),
        };
        m.trim();
        Ok(m)
    }

    fn trim(&mut self) {
        let rem = self.k % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The subset as a single machine word, when `k <= 64`.
    pub fn to_bits(&self) -> Option<u64> {
        (self.k <= WORD).then(|| self.words[0])
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Bit test by 0-based position.
    #[inline]
    pub fn bit(&self, pos: usize) -> bool {
        debug_assert!(pos < self.k);
        (self.words[pos / WORD] >> (pos % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set_bit(&mut self, pos: usize) {
        assert!(pos < self.k, "position {pos} outside ground set of size {}", self.k);
        self.words[pos / WORD] |= 1 << (pos % WORD);
    }

    #[inline]
    pub fn clear_bit(&mut self, pos: usize) {
        assert!(pos < self.k, "position {pos} outside ground set of size {}", self.k);
        self.words[pos / WORD] &= !(1 << (pos % WORD));
    }

    /// Membership test by 1-based element name.
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.k && self.bit(element - 1)
    }

    /// 0-based positions of the members, ascending.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + tz)
                }
            })
        })
    }

    /// 1-based element names, ascending.
    pub fn elements(&self) -> Vec<usize> {
        self.positions().map(|p| p + 1).collect()
    }

    pub fn same_k(&self, other: &SubsetMask) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.k,
                found: other.k,
            })
        }
    }

    fn zip_with(&self, other: &SubsetMask, f: impl Fn(u64, u64) -> u64) -> SubsetMask {
        assert_eq!(self.k, other.k, "ground set sizes differ");
        let mut out = SubsetMask {
            k: self.k,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn complement(&self) -> SubsetMask {
        let mut out = SubsetMask {
            k: self.k,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &SubsetMask) -> SubsetMask {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &SubsetMask) -> SubsetMask {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &SubsetMask) -> usize {
        debug_assert_eq!(self.k, other.k);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        debug_assert_eq!(self.k, other.k);
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &SubsetMask) -> bool {
        self.intersection_len(other) == 0
    }

    /// The `count` smallest members (lexicographically least `count`-subset).
    pub fn lowest(&self, count: usize) -> SubsetMask {
        let mut out = SubsetMask::empty(self.k);
        for p in self.positions().take(count) {
            out.set_bit(p);
        }
        out
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.positions().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊆[{}]", self, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn elements_round_trip() {
        let a = SubsetMask::from_elements(8, [1, 2, 3, 4]).unwrap();
        assert_eq!(a.elements(), vec![1, 2, 3, 4]);
        assert_eq!(a.to_bits(), Some(0b1111));
        assert_eq!(a.to_string(), "{1,2,3,4}");
        assert!(SubsetMask::from_elements(8, [9]).is_err());
        assert!(SubsetMask::from_elements(8, [0]).is_err());
    }

    #[test]
    fn complement_trims_high_bits() {
        let a = SubsetMask::from_elements(70, [1, 70]).unwrap();
        let c = a.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(70));
        assert!(c.contains(69));
        assert_eq!(SubsetMask::full(70).len(), 70);
    }

    #[test]
    fn ordering_is_integer_order() {
        let a = SubsetMask::from_elements(70, [70]).unwrap();
        let b = SubsetMask::from_elements(70, [1, 2, 3]).unwrap();
        assert!(b < a);
        let c = SubsetMask::from_bits(4, 0b0101).unwrap();
        let d = SubsetMask::from_bits(4, 0b0110).unwrap();
        assert!(c < d);
    }

    #[test]
    fn lowest_takes_smallest_members() {
        let a = SubsetMask::from_elements(10, [2, 5, 7, 9]).unwrap();
        assert_eq!(a.lowest(2).elements(), vec![2, 5]);
        assert_eq!(a.lowest(0).len(), 0);
        assert_eq!(a.lowest(9), a);
    }

    fn arb_pair() -> impl Strategy<Value = (SubsetMask, SubsetMask)> {
        (1usize..150).prop_flat_map(|k| {
            let n = k.div_ceil(64);
            (
                prop::collection::vec(any::<u64>(), n),
                prop::collection::vec(any::<u64>(), n),
            )
                .prop_map(move |(a, b)| {
                    (
                        SubsetMask::from_words(k, &a).unwrap(),
                        SubsetMask::from_words(k, &b).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn complement_is_an_involution((a, _b) in arb_pair()) {
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(a.len() + a.complement().len(), a.k());
        }

        #[test]
        fn symmetric_difference_size((a, b) in arb_pair()) {
            let sd = a.symmetric_difference(&b);
            prop_assert_eq!(sd.len(), a.len() + b.len() - 2 * a.intersection_len(&b));
        }
    }
}
