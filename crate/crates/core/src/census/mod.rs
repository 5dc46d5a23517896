//! Equivalence of separating families through their cube representations.
//!
//! Complementing a member reflects one coordinate of the cube; reordering the
//! members permutes coordinates; relabelling the ground set does not move the
//! point set at all. Two separating families with the same `m` and `k` are
//! therefore equivalent exactly when their column sets lie in one orbit of the
//! hyperoctahedral group `Aut(Q_m)` (order `2^m · m!`), which is decided here
//! by brute-force minimization over the group.

use std::collections::HashSet;
use std::fmt;

use crate::enumerate::k_subsets;
use crate::error::{guard, Error, Result};
use crate::ground::{family_to_matrix, CubePointSet, SetFamily};
use crate::limits::Limits;

/// A symmetry of `Q_m`: reflect the coordinates in `flip`, then move
/// coordinate `i` to coordinate `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeSymmetry {
    pub perm: Vec<usize>,
    pub flip: u64,
}

impl CubeSymmetry {
    pub fn identity(m: usize) -> Self {
        CubeSymmetry {
            perm: (0..m).collect(),
            flip: 0,
        }
    }

    pub fn apply(&self, point: u64) -> u64 {
        let m = self.perm.len();
        let p = point ^ self.flip;
        self.perm
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &to)| acc | (((p >> (m - 1 - i)) & 1) << (m - 1 - to)))
    }

    /// Images of all `2^m` vertices.
    pub fn table(&self) -> Vec<u64> {
        (0..1u64 << self.perm.len()).map(|v| self.apply(v)).collect()
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

/// Every element of `Aut(Q_m)`: all permutations composed with all reflections.
pub fn cube_symmetries(m: usize) -> Result<Vec<CubeSymmetry>> {
    guard("cube dimension for group enumeration", m as u128, 8)?;
    let perms = permutations(m);
    Ok(perms
        .into_iter()
        .flat_map(|perm| {
            (0..1u64 << m).map(move |flip| CubeSymmetry {
                perm: perm.clone(),
                flip,
            })
        })
        .collect())
}

/// The least image of a point set over `Aut(Q_m)`, points ascending and
/// compared lexicographically as unsigned integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCubeForm(CubePointSet);

impl CanonicalCubeForm {
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn points(&self) -> &[u64] {
        self.0.points()
    }

    pub fn as_point_set(&self) -> &CubePointSet {
        &self.0
    }
}

impl fmt::Debug for CanonicalCubeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Canonical{:?}", self.0)
    }
}

/// Column vectors of the matrix representation of a separating family.
pub fn cube_representation(family: &SetFamily) -> Result<CubePointSet> {
    let m = family.len();
    guard("cube dimension", m as u128, 63)?;
    if m == 0 {
        if family.k() > 1 {
            return Err(Error::precondition("empty family does not separate"));
        }
        return CubePointSet::new(0, [0]);
    }
    let matrix = family_to_matrix(family)?;
    if let Some((a, b)) = matrix.find_equal_columns() {
        return Err(Error::precondition(format!(
            "family is not separating: columns {} and {} are equal",
            a + 1,
            b + 1
        )));
    }
    let mut points = vec![0u64; family.k()];
    for i in 0..m {
        for j in matrix.row(i).positions() {
            points[j] |= 1 << (m - 1 - i);
        }
    }
    CubePointSet::new(m, points)
}

/// Canonicalizer with the group tables built once.
#[derive(Debug)]
pub struct Canonicalizer {
    m: usize,
    tables: Vec<Vec<u64>>,
}

impl Canonicalizer {
    pub fn new(m: usize) -> Result<Self> {
        Self::with_limits(m, &Limits::default())
    }

    pub fn with_limits(m: usize, limits: &Limits) -> Result<Self> {
        guard(
            "cube dimension for canonical form",
            m as u128,
            limits.max_canonical_dim as u128,
        )?;
        Ok(Canonicalizer {
            m,
            tables: cube_symmetries(m)?.iter().map(|g| g.table()).collect(),
        })
    }

    pub fn group_order(&self) -> usize {
        self.tables.len()
    }

    pub fn canonical_points(&self, points: &[u64]) -> Vec<u64> {
        let mut best: Option<Vec<u64>> = None;
        let mut image = Vec::with_capacity(points.len());
        for t in &self.tables {
            image.clear();
            image.extend(points.iter().map(|&p| t[p as usize]));
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image.clone());
            }
        }
        best.unwrap_or_default()
    }

    pub fn canonical_form(&self, c: &CubePointSet) -> Result<CanonicalCubeForm> {
        if c.dim() != self.m {
            return Err(Error::Dimension {
                expected: self.m,
                found: c.dim(),
            });
        }
        Ok(CanonicalCubeForm(CubePointSet::new(
            self.m,
            self.canonical_points(c.points()),
        )?))
    }
}

pub fn canonical_form(c: &CubePointSet) -> Result<CanonicalCubeForm> {
    Canonicalizer::new(c.dim())?.canonical_form(c)
}

/// True iff the cube representations lie in one `Aut(Q_m)` orbit.
pub fn families_equivalent(f: &SetFamily, g: &SetFamily) -> Result<bool> {
    if f.k() != g.k() || f.len() != g.len() {
        return Err(Error::precondition(format!(
            "families differ in shape: (m={}, k={}) vs (m={}, k={})",
            f.len(),
            f.k(),
            g.len(),
            g.k()
        )));
    }
    let (cf, cg) = (cube_representation(f)?, cube_representation(g)?);
    let canon = Canonicalizer::new(f.len())?;
    Ok(canon.canonical_form(&cf)? == canon.canonical_form(&cg)?)
}

/// Number of `Aut(Q_m)` orbits of `k`-element subsets of `Q_m`, by
/// canonicalizing every subset.
pub fn count_sep(m: usize, k: usize) -> Result<u128> {
    count_sep_with(m, k, &Limits::default())
}

pub fn count_sep_with(m: usize, k: usize, limits: &Limits) -> Result<u128> {
    guard(
        "cube dimension for census",
        m as u128,
        limits.max_census_dim.min(5) as u128,
    )?;
    let size = 1usize << m;
    if k > size {
        return Err(Error::domain(format!("k={k} exceeds 2^m = {size}")));
    }
    let canon = Canonicalizer::with_limits(
        m,
        &Limits {
            max_canonical_dim: m,
            ..limits.clone()
        },
    )?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for subset in k_subsets(size, k) {
        let points: Vec<u64> = (0..size as u64).filter(|&v| (subset >> v) & 1 == 1).collect();
        seen.insert(canon.canonical_points(&points));
    }
    Ok(seen.len() as u128)
}

/// Orbit count by Burnside's lemma: the average over the group of the number
/// of `k`-subsets fixed by each element, read off its cycle type.
pub fn burnside_count(m: usize, k: usize) -> Result<u128> {
    guard("cube dimension for Burnside count", m as u128, 6)?;
    let size = 1usize << m;
    if k > size {
        return Err(Error::domain(format!("k={k} exceeds 2^m = {size}")));
    }
    let group = cube_symmetries(m)?;
    let mut total = 0u128;
    for g in &group {
        let t = g.table();
        let mut seen = vec![false; size];
        // poly[j] = number of fixed j-subsets built from the cycles so far.
        let mut poly = vec![0u128; size + 1];
        poly[0] = 1;
        for start in 0..size {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = t[v] as usize;
                len += 1;
            }
            for j in (len..=size).rev() {
                poly[j] += poly[j - len];
            }
        }
        total += poly[k];
    }
    Ok(total / group.len() as u128)
}
