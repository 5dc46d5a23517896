use std::collections::VecDeque;

use crate::error::{guard, Error, Result};
use crate::ground::{SetCollection, SubsetMask};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparabilityMode {
    /// Exhaustive search over subsets of the union.
    Brute,
    /// Bipartiteness of the pair graph; every member must have two elements.
    Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unseparable {
    /// Member `index` (0-based) has fewer than two elements.
    SmallMember { index: usize },
    /// The pair graph contains an odd cycle.
    OddCycle,
    /// No subset of the union separates every member.
    NoSeparator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationWitness {
    Separator(SubsetMask),
    /// A 2-colouring of the pair graph; `part` holds the colour of the lowest
    /// vertex in each component.
    Bipartition {
        part: SubsetMask,
        other: SubsetMask,
    },
    None(Unseparable),
}

impl SeparationWitness {
    pub fn is_separable(&self) -> bool {
        !matches!(self, SeparationWitness::None(_))
    }

    /// A single set separating the collection, if the witness provides one.
    pub fn separator(&self) -> Option<&SubsetMask> {
        match self {
            SeparationWitness::Separator(a) => Some(a),
            SeparationWitness::Bipartition { part, .. } => Some(part),
            SeparationWitness::None(_) => None,
        }
    }
}

pub fn is_separable(c: &SetCollection, mode: SeparabilityMode) -> Result<SeparationWitness> {
    is_separable_with(c, mode, &Limits::default())
}

pub fn is_separable_with(c: &SetCollection, mode: SeparabilityMode, limits: &Limits) -> Result<SeparationWitness> {
    if mode == SeparabilityMode::Pairs {
        if let Some(b) = c.sets().iter().find(|b| b.len() != 2) {
            return Err(Error::domain(format!("pairs mode needs 2-element members, got {b}")));
        }
    }
    if let Some(index) = c.sets().iter().position(|b| b.len() < 2) {
        return Ok(SeparationWitness::None(Unseparable::SmallMember { index }));
    }
    match mode {
        SeparabilityMode::Brute => brute(c, limits),
        SeparabilityMode::Pairs => {
            let pairs: Vec<(usize, usize)> = c
                .sets()
                .iter()
                .map(|b| {
                    let mut p = b.positions();
                    (p.next().unwrap(), p.next().unwrap())
                })
                .collect();
            Ok(match pair_bipartition(c.k(), &pairs) {
                Some(part) => {
                    let other = c.union().difference(&part);
                    SeparationWitness::Bipartition { part, other }
                }
                None => SeparationWitness::None(Unseparable::OddCycle),
            })
        }
    }
}

/// Least separator (in integer order of the compressed union) by exhaustive search.
fn brute(c: &SetCollection, limits: &Limits) -> Result<SeparationWitness> {
    let union: Vec<usize> = c.union().positions().collect();
    guard(
        "separable union size",
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
    for a in 0..1u64 << union.len() {
        if compressed.iter().all(|&b| a & b != 0 && !a & b != 0) {
            let mut mask = SubsetMask::empty(c.k());
            for (i, &p) in union.iter().enumerate() {
                if (a >> i) & 1 == 1 {
                    mask.set_bit(p);
                }
            }
            return Ok(SeparationWitness::Separator(mask));
        }
    }
    Ok(SeparationWitness::None(Unseparable::NoSeparator))
}

/// 2-colours the graph on `[k]` (0-based vertices) with the given edges by BFS
/// from each lowest unvisited vertex, which gets colour 0. Returns the colour-0
/// vertices, or `None` on an odd cycle. Isolated vertices are left out.
pub fn pair_bipartition(k: usize, pairs: &[(usize, usize)]) -> Option<SubsetMask> {
    let mut adj = vec![Vec::new(); k];
    for &(x, y) in pairs {
        if x == y {
            return None;
        }
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut colour: Vec<Option<bool>> = vec![None; k];
    let mut part = SubsetMask::empty(k);
    let mut queue = VecDeque::new();
    for start in 0..k {
        if colour[start].is_some() || adj[start].is_empty() {
            continue;
        }
        colour[start] = Some(false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = colour[v].unwrap();
            if !cv {
                part.set_bit(v);
            }
            for &w in &adj[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(part)
}
