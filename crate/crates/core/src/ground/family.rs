use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ground::SubsetMask;

/// A duplicate-free family of subsets of a common ground set `[k]`.
///
/// Insertion order is kept for display and for matrix row order, but equality
/// is set equality.
#[derive(Clone)]
pub struct SetFamily {
    k: usize,
    members: Vec<SubsetMask>,
    index: HashSet<SubsetMask>,
}

impl SetFamily {
    /// An empty family over `[k]`.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("ground set size must be positive"));
        }
        Ok(SetFamily {
            k,
            members: Vec::new(),
            index: HashSet::new(),
        })
    }

    /// Builds a family, silently dropping repeated members.
    pub fn from_members<I: IntoIterator<Item = SubsetMask>>(k: usize, members: I) -> Result<Self> {
        Self::from_members_counting(k, members).map(|(f, _)| f)
    }

    /// Like [`SetFamily::from_members`], also returning how many duplicates were dropped.
    pub fn from_members_counting<I: IntoIterator<Item = SubsetMask>>(k: usize, members: I) -> Result<(Self, usize)> {
        let mut family = Self::new(k)?;
        let mut dropped = 0;
        for m in members {
            if !family.insert(m)? {
                dropped += 1;
            }
        }
        Ok((family, dropped))
    }

    /// Builds a family from 1-based element lists.
    pub fn from_element_lists<L, I>(k: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let members = lists
            .into_iter()
            .map(|l| SubsetMask::from_elements(k, l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_members(k, members)
    }

    /// Every subset of `[k]`, in integer order.
    pub fn power_set(k: usize) -> Result<Self> {
        if k == 0 || k > 24 {
            return Err(Error::domain(format!("power set needs 0 < k <= 24, got {k}")));
        }
        Self::from_members(k, (0..1u64 << k).map(|b| SubsetMask::from_bits(k, b).unwrap()))
    }

    /// All `size`-element subsets of `[k]`, in integer order.
    pub fn uniform(k: usize, size: usize) -> Result<Self> {
        if k == 0 || k > 24 {
            return Err(Error::domain(format!("uniform family needs 0 < k <= 24, got {k}")));
        }
        Self::from_members(
            k,
            crate::enumerate::k_subsets(k, size).map(|b| SubsetMask::from_bits(k, b).unwrap()),
        )
    }

    /// Inserts `m`, returning `false` if it was already present.
    pub fn insert(&mut self, m: SubsetMask) -> Result<bool> {
        if m.k() != self.k {
            return Err(Error::Dimension {
                expected: self.k,
                found: m.k(),
            });
        }
        if self.index.contains(&m) {
            return Ok(false);
        }
        self.index.insert(m.clone());
        self.members.push(m);
        Ok(true)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetMask> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &SubsetMask) -> bool {
        self.index.contains(m)
    }

    /// Members as machine words; `None` when `k > 64`.
    pub fn to_bits(&self) -> Option<Vec<u64>> {
        self.members.iter().map(|m| m.to_bits()).collect()
    }

    /// Members sorted in integer order; a canonical listing for comparisons.
    pub fn sorted_members(&self) -> Vec<SubsetMask> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    /// The family with member `i` replaced by its complement.
    pub fn complement_member(&self, i: usize) -> Result<SetFamily> {
        let members = self
            .members
            .iter()
            .enumerate()
            .map(|(j, m)| if i == j { m.complement() } else { m.clone() });
        SetFamily::from_members(self.k, members)
    }

    /// Relabels the ground set: element `e` (1-based) becomes `perm[e - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SetFamily> {
        if perm.len() != self.k {
            return Err(Error::Dimension {
                expected: self.k,
                found: perm.len(),
            });
        }
        let members = self
            .members
            .iter()
            .map(|m| SubsetMask::from_elements(self.k, m.elements().into_iter().map(|e| perm[e - 1])))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::from_members(self.k, members)
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.index == other.index
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily[k={}]{{", self.k)?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// An ordered tuple `(B_1, ..., B_n)` of subsets of `[k]`; repeats are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetCollection {
    k: usize,
    sets: Vec<SubsetMask>,
}

impl SetCollection {
    pub fn new(sets: Vec<SubsetMask>) -> Result<Self> {
        let first = sets
            .first()
            .ok_or_else(|| Error::domain("a collection needs at least one set"))?;
        let k = first.k();
        for s in &sets {
            first.same_k(s)?;
        }
        Ok(SetCollection { k, sets })
    }

    pub fn from_element_lists<L, I>(k: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let sets = lists
            .into_iter()
            .map(|l| SubsetMask::from_elements(k, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn union(&self) -> SubsetMask {
        self.sets.iter().fold(SubsetMask::empty(self.k), |acc, s| acc.union(s))
    }
}

impl fmt::Display for SetCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_dropped_and_counted() {
        let a = SubsetMask::from_elements(4, [1]).unwrap();
        let (f, dropped) = SetFamily::from_members_counting(4, vec![a.clone(), a.clone(), a.complement()]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(dropped, 1);
    }

    #[test]
    fn equality_ignores_order() {
        let f = SetFamily::from_element_lists(3, [vec![1], vec![2, 3]]).unwrap();
        let g = SetFamily::from_element_lists(3, [vec![2, 3], vec![1]]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn mismatched_k_is_rejected() {
        let mut f = SetFamily::new(3).unwrap();
        let err = f.insert(SubsetMask::empty(4)).unwrap_err();
        assert!(matches!(err, Error::Dimension { expected: 3, found: 4 }));
        assert!(SetCollection::new(vec![SubsetMask::empty(3), SubsetMask::empty(4)]).is_err());
        assert!(SetCollection::new(vec![]).is_err());
    }

    #[test]
    fn relabel_applies_permutation() {
        let f = SetFamily::from_element_lists(3, [vec![1, 2]]).unwrap();
        let g = f.relabel(&[3, 1, 2]).unwrap();
        assert_eq!(g.members()[0].elements(), vec![1, 3]);
    }
}
