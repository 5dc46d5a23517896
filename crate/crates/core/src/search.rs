//! Exact minimum family sizes by set-cover search.
//!
//! Tasks are the objects a family must handle (pairs to separate, separable
//! pair collections, sets or splittable collections to split); candidates are
//! subsets of `[k]`. Each property is invariant under complementing a member,
//! so only candidates avoiding element `k` are tried, and `∅` covers nothing.

use std::fmt;

use serde::Serialize;

use crate::enumerate::multisets;
use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SetFamily, SubsetMask};
use crate::limits::Limits;
use crate::separate::{is_n_separating_with, is_separating_family, separable_pair_collections};
use crate::split::{is_n_splitting_with, is_splittable_with, is_splitting_family_with, splits_bits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    Separating,
    NSeparating(usize),
    Splitting,
    NSplitting(usize),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Separating => write!(f, "separating"),
            Property::NSeparating(n) => write!(f, "{n}-separating"),
            Property::Splitting => write!(f, "splitting"),
            Property::NSplitting(n) => write!(f, "{n}-splitting"),
        }
    }
}

impl Property {
    /// Runs the property's recognizer on `family`.
    pub fn holds(&self, family: &SetFamily, limits: &Limits) -> Result<bool> {
        match *self {
            Property::Separating => Ok(is_separating_family(family)),
            Property::NSeparating(n) => is_n_separating_with(family, n, limits),
            Property::Splitting => is_splitting_family_with(family, limits),
            Property::NSplitting(n) => is_n_splitting_with(family, n, limits),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub property: Property,
    pub k: usize,
    pub value: usize,
    pub certificate: SetFamily,
    /// True iff every smaller size was ruled out; false when the node budget
    /// ran out and `value` is only the best size found.
    pub exhausted: bool,
    pub nodes: u64,
}

impl SearchResult {
    pub fn objective(&self) -> String {
        format!("min family size for {} at k={}", self.property, self.k)
    }
}

pub fn exact_min_family_size(property: Property, k: usize) -> Result<SearchResult> {
    exact_min_family_size_with(property, k, &Limits::default())
}

pub fn exact_min_family_size_with(property: Property, k: usize, limits: &Limits) -> Result<SearchResult> {
    if k < 2 {
        return Err(Error::domain("search needs k >= 2"));
    }
    let (what, cap) = match property {
        Property::Separating => ("ground set for separating search", limits.max_search_k_sep),
        Property::NSeparating(_) => ("ground set for n-separating search", limits.max_search_k_nsep),
        Property::Splitting => ("ground set for splitting search", limits.max_search_k_split),
        Property::NSplitting(_) => ("ground set for n-splitting search", limits.max_search_k_nsplit),
    };
    guard(what, k as u128, cap.min(20) as u128)?;
    let candidates: Vec<u64> = (1..1u64 << (k - 1)).collect();
    let covers = cover_table(property, k, &candidates, limits)?;
    let mut cover = Cover::new(covers, limits.max_evaluations);

    let greedy = cover.greedy();
    let mut best = greedy.clone();
    let mut exhausted = true;
    let mut depth = cover.lower_bound();
    while depth < best.len() {
        match cover.solve(depth) {
            Some(Some(sol)) => {
                best = sol;
                break;
            }
            Some(None) => depth += 1,
            None => {
                exhausted = false;
                break;
            }
        }
    }
    let members: Vec<SubsetMask> = best
        .iter()
        .map(|&c| SubsetMask::from_bits(k, candidates[c]).expect("k <= 20"))
        .collect();
    let certificate = SetFamily::from_members(k, members)?;
    if !property.holds(&certificate, &Limits::unlimited())? {
        return Err(Error::ConstructionBug(format!(
            "search certificate of size {} fails the {property} recognizer",
            best.len()
        )));
    }
    Ok(SearchResult {
        property,
        k,
        value: best.len(),
        certificate,
        exhausted,
        nodes: cover.nodes,
    })
}

/// For each candidate, the bitset of tasks it covers.
fn cover_table(property: Property, k: usize, candidates: &[u64], limits: &Limits) -> Result<Vec<Vec<u64>>> {
    let big: Vec<u64> = (0..1u64 << k).filter(|b| b.count_ones() >= 2).collect();
    let tasks: Vec<Box<dyn Fn(u64) -> bool>> = match property {
        Property::Separating | Property::NSeparating(_) => {
            let n = match property {
                Property::NSeparating(n) => n,
                _ => 1,
            };
            let pairs: Vec<u64> = (0..k)
                .flat_map(|x| (x + 1..k).map(move |y| (1u64 << x) | (1u64 << y)))
                .collect();
            separable_pair_collections(k, n, limits)?
                .into_iter()
                .map(|c| {
                    let masks: Vec<u64> = c.iter().map(|&i| pairs[i]).collect();
                    Box::new(move |a: u64| masks.iter().all(|&p| (a & p).count_ones() == 1)) as Box<dyn Fn(u64) -> bool>
                })
                .collect()
        }
        Property::Splitting | Property::NSplitting(_) => {
            let n = match property {
                Property::NSplitting(n) => n,
                _ => 1,
            };
            if n == 0 {
                return Err(Error::domain("n must be at least 1"));
            }
            guard(
                "splitting tasks",
                multisets(big.len() as u64, n as u64),
                limits.max_tasks,
            )?;
            let mut out: Vec<Box<dyn Fn(u64) -> bool>> = Vec::new();
            for c in collections(&big, n) {
                if n >= 3 {
                    let sets = c
                        .iter()
                        .map(|&b| SubsetMask::from_bits(k, b))
                        .collect::<Result<Vec<_>>>()?;
                    if is_splittable_with(&SetCollection::new(sets)?, limits)?.is_none() {
                        continue;
                    }
                }
                out.push(Box::new(move |a: u64| c.iter().all(|&b| splits_bits(a, b))));
            }
            out
        }
    };
    guard(
        "search cover table",
        tasks.len() as u128 * candidates.len() as u128,
        limits.max_evaluations,
    )?;
    let words = tasks.len().div_ceil(64);
    Ok(candidates
        .iter()
        .map(|&a| {
            let mut w = vec![0u64; words];
            for (i, t) in tasks.iter().enumerate() {
                if t(a) {
                    w[i >> 6] |= 1 << (i & 63);
                }
            }
            w
        })
        .collect())
}

/// Nondecreasing `n`-multisets over `items`.
fn collections(items: &[u64], n: usize) -> Vec<Vec<u64>> {
    fn rec(items: &[u64], n: usize, start: usize, path: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if path.len() == n {
            out.push(path.clone());
            return;
        }
        for i in start..items.len() {
            path.push(items[i]);
            rec(items, n, i, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

struct Cover {
    covers: Vec<Vec<u64>>,
    tasks: usize,
    budget: u128,
    nodes: u64,
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

impl Cover {
    fn new(covers: Vec<Vec<u64>>, budget: u128) -> Self {
        let mut cover = Cover {
            covers,
            tasks: 0,
            budget,
            nodes: 0,
        };
        cover.tasks = count(&cover.all());
        cover
    }

    fn all(&self) -> Vec<u64> {
        self.covers
            .iter()
            .fold(vec![0u64; self.covers.first().map_or(0, Vec::len)], |acc, c| {
                acc.iter().zip(c).map(|(x, y)| x | y).collect()
            })
    }

    fn lower_bound(&self) -> usize {
        let best = self.covers.iter().map(|c| count(c)).max().unwrap_or(0);
        if best == 0 {
            0
        } else {
            self.tasks.div_ceil(best)
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.all();
        let mut chosen = Vec::new();
        while count(&uncovered) > 0 {
            let (i, _) = self
                .covers
                .iter()
                .enumerate()
                .map(|(i, c)| (i, and_count(c, &uncovered)))
                .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
            chosen.push(i);
            for (u, c) in uncovered.iter_mut().zip(&self.covers[i]) {
                *u &= !c;
            }
        }
        chosen
    }

    /// `Some(Some(cover))` if a cover of size `depth` exists, `Some(None)` if
    /// none does, `None` if the node budget ran out.
    fn solve(&mut self, depth: usize) -> Option<Option<Vec<usize>>> {
        let mut path = Vec::with_capacity(depth);
        let uncovered = self.all();
        match self.dfs(depth, &uncovered, &mut path) {
            Ok(true) => Some(Some(path)),
            Ok(false) => Some(None),
            Err(()) => None,
        }
    }

    fn dfs(&mut self, depth: usize, uncovered: &[u64], path: &mut Vec<usize>) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes as u128 > self.budget {
            return Err(());
        }
        let left = count(uncovered);
        if left == 0 {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        let best = self.covers.iter().map(|c| and_count(c, uncovered)).max().unwrap_or(0);
        if best * depth < left {
            return Ok(false);
        }
        // Some member of any cover handles the first uncovered task.
        let w = uncovered.iter().position(|&w| w != 0).expect("left > 0");
        let bit = uncovered[w] & uncovered[w].wrapping_neg();
        for i in 0..self.covers.len() {
            if self.covers[i][w] & bit == 0 {
                continue;
            }
            let next: Vec<u64> = uncovered.iter().zip(&self.covers[i]).map(|(u, c)| u & !c).collect();
            path.push(i);
            if self.dfs(depth - 1, &next, path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}
