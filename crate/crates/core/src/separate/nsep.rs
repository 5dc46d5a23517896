use crate::enumerate::multisets;
use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SetFamily, SubsetMask};
use crate::limits::Limits;

/// All pairs `(x, y)` with `0 <= x < y < k`, in lexicographic order.
pub(crate) fn all_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect()
}

/// Union-find with parity, for incremental bipartiteness of a pair graph.
#[derive(Clone)]
pub(crate) struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityForest {
    pub(crate) fn new(k: usize) -> Self {
        ParityForest {
            parent: (0..k).collect(),
            parity: vec![false; k],
        }
    }

    fn find(&self, mut v: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    /// Adds an edge forcing `x` and `y` apart; false if that closes an odd cycle.
    pub(crate) fn add_edge(&mut self, x: usize, y: usize) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px != py;
        }
        self.parent[ry] = rx;
        self.parity[ry] = !(px ^ py);
        true
    }
}

/// For each pair, the bitset of member indices that separate it.
fn separators_by_pair(family: &SetFamily, pairs: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let words = family.len().div_ceil(64);
    let mut out = vec![vec![0u64; words]; pairs.len()];
    for (i, m) in family.iter().enumerate() {
        for (p, &(x, y)) in pairs.iter().enumerate() {
            if m.bit(x) != m.bit(y) {
                out[p][i >> 6] |= 1 << (i & 63);
            }
        }
    }
    out
}

pub fn is_n_separating(family: &SetFamily, n: usize) -> Result<bool> {
    is_n_separating_with(family, n, &Limits::default())
}

pub fn is_n_separating_with(family: &SetFamily, n: usize, limits: &Limits) -> Result<bool> {
    Ok(find_n_separating_violation_with(family, n, limits)?.is_none())
}

pub fn find_n_separating_violation(family: &SetFamily, n: usize) -> Result<Option<SetCollection>> {
    find_n_separating_violation_with(family, n, &Limits::default())
}

/// A separable collection of `n` pairs that no member separates simultaneously.
///
/// Pair multisets are walked depth-first in nondecreasing lexicographic pair
/// order, so the first violation found is the least one in that order. A short
/// violating prefix is padded to length `n` by repeating its last pair, which
/// changes neither separability nor the set of members separating it.
pub fn find_n_separating_violation_with(
    family: &SetFamily,
    n: usize,
    limits: &Limits,
) -> Result<Option<SetCollection>> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let k = family.k();
    if k < 2 {
        return Ok(None);
    }
    let pairs = all_pairs(k);
    let cost = multisets(pairs.len() as u64, n as u64).saturating_mul(family.len().max(1).div_ceil(64) as u128);
    guard("n-separating evaluations", cost, limits.max_evaluations)?;
    let seps = separators_by_pair(family, &pairs);
    let mut path = Vec::with_capacity(n);
    let all: Vec<u64> = {
        let mut v = vec![u64::MAX; family.len().div_ceil(64)];
        if let Some(last) = v.last_mut() {
            let r = family.len() % 64;
            if r != 0 {
                *last = (1u64 << r) - 1;
            }
        }
        v
    };
    let found = dfs(&pairs, &seps, n, 0, &all, &ParityForest::new(k), &mut path);
    Ok(found.then(|| {
        let last = *path.last().unwrap();
        path.resize(n, last);
        let sets = path
            .iter()
            .map(|&p| {
                let (x, y) = pairs[p];
                SubsetMask::from_elements(k, [x + 1, y + 1]).unwrap()
            })
            .collect();
        SetCollection::new(sets).unwrap()
    }))
}

fn dfs(
    pairs: &[(usize, usize)],
    seps: &[Vec<u64>],
    n: usize,
    start: usize,
    acc: &[u64],
    forest: &ParityForest,
    path: &mut Vec<usize>,
) -> bool {
    for p in start..pairs.len() {
        let mut f = forest.clone();
        let (x, y) = pairs[p];
        if !f.add_edge(x, y) {
            continue;
        }
        let next: Vec<u64> = acc.iter().zip(&seps[p]).map(|(a, b)| a & b).collect();
        path.push(p);
        if next.iter().all(|&w| w == 0) {
            return true;
        }
        if path.len() < n && dfs(pairs, seps, n, p, &next, &f, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Every separable multiset of `n` pairs over `[k]`, as nondecreasing lists of
/// indices into the lexicographic pair list.
pub fn separable_pair_collections(k: usize, n: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if k < 2 {
        return Ok(Vec::new());
    }
    let pairs = all_pairs(k);
    guard(
        "pair collections",
        multisets(pairs.len() as u64, n as u64),
        limits.max_tasks,
    )?;
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    collect(&pairs, n, 0, &ParityForest::new(k), &mut path, &mut out);
    Ok(out)
}

fn collect(
    pairs: &[(usize, usize)],
    n: usize,
    start: usize,
    forest: &ParityForest,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() == n {
        out.push(path.clone());
        return;
    }
    for p in start..pairs.len() {
        let mut f = forest.clone();
        if !f.add_edge(pairs[p].0, pairs[p].1) {
            continue;
        }
        path.push(p);
        collect(pairs, n, p, &f, path, out);
        path.pop();
    }
}
