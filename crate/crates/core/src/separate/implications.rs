use std::fmt;

use rand::Rng;

use crate::error::{guard, Error, Result};
use crate::ground::{SetFamily, SubsetMask};
use crate::limits::Limits;
use crate::report::VerdictReport;
use crate::rng::seeded;
use crate::separate::{is_ij_separating_with, is_n_separating_with};

/// Implications between the `n`-separating and `(i, j)`-separating notions.
///
/// The first three kinds are positive implications, checked by stress testing
/// on random families. The rest are non-implications, checked by building an
/// explicit family that has one property and lacks the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    /// `(i, j)` implies `(i', j')` for all `i' <= i`, `j' <= j`.
    Monotone { i: usize, j: usize },
    /// `(n, n)` implies `n`.
    NnImpliesN { n: usize },
    /// `(i + j - 1)` implies `(i, j)`.
    SumImpliesIj { i: usize, j: usize },
    /// Sets of size `1..=n` minus two disjoint `n`-sets `B, B'`:
    /// `n`-separating, not `(n, n)`.
    NSepNotNn { n: usize },
    /// All subsets containing neither `B` (`|B| = i`) nor `B'` (`|B'| = j`),
    /// with `i + j >= n + 2`: `n`-separating, not `(i, j)`.
    NSepNotIj { n: usize, i: usize, j: usize },
    /// `[k]^(n-1)`: `(n-1, j)`-separating, not `n`.
    IjNotNSep { n: usize, j: usize },
    /// `[k]^n`: `n`-separating, not `n + 1`.
    NSepNotNextN { n: usize },
    /// `[k]^i` is `(i, j)` and not `(i+1, j)`; `[k]^(k-j)` is `(i, j)` and not
    /// `(i, j+1)`. Needs `i < j` and `k <= 2j`.
    IjNotNextIj { i: usize, j: usize },
    /// With `i < i2 <= j2 < j`: `[k]^i` is `(i, j)` and not `(i2, j2)`; the
    /// family `([k]^i2 minus supersets of B) ∪ [k \ B]^j2`, `|B| = i`, is
    /// `(i2, j2)` and not `(i, j)`.
    IjIncomparable { i: usize, j: usize, i2: usize, j2: usize },
}

impl Implication {
    pub fn is_positive(&self) -> bool {
        matches!(
            self,
            Implication::Monotone { .. } | Implication::NnImpliesN { .. } | Implication::SumImpliesIj { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Implication::Monotone { .. } => "ij-monotone",
            Implication::NnImpliesN { .. } => "nn-implies-n",
            Implication::SumImpliesIj { .. } => "sum-implies-ij",
            Implication::NSepNotNn { .. } => "nsep-not-nn",
            Implication::NSepNotIj { .. } => "nsep-not-ij",
            Implication::IjNotNSep { .. } => "ij-not-nsep",
            Implication::NSepNotNextN { .. } => "nsep-not-next-n",
            Implication::IjNotNextIj { .. } => "ij-not-next-ij",
            Implication::IjIncomparable { .. } => "ij-incomparable",
        }
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match *self {
            Implication::Monotone { i, j } | Implication::SumImpliesIj { i, j } | Implication::IjNotNextIj { i, j } => {
                write!(f, " i={i} j={j}")
            }
            Implication::NnImpliesN { n } | Implication::NSepNotNn { n } | Implication::NSepNotNextN { n } => {
                write!(f, " n={n}")
            }
            Implication::NSepNotIj { n, i, j } => write!(f, " n={n} i={i} j={j}"),
            Implication::IjNotNSep { n, j } => write!(f, " n={n} j={j}"),
            Implication::IjIncomparable { i, j, i2, j2 } => {
                write!(f, " i={i} j={j} i2={i2} j2={j2}")
            }
        }
    }
}

/// Random families for the positive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StressPlan {
    pub families: usize,
    pub seed: u64,
}

impl Default for StressPlan {
    fn default() -> Self {
        StressPlan { families: 200, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy)]
enum Property {
    NSep(usize),
    Ij(usize, usize),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::NSep(n) => write!(f, "{n}-separating"),
            Property::Ij(i, j) => write!(f, "({i},{j})-separating"),
        }
    }
}

impl Property {
    fn holds(&self, family: &SetFamily, limits: &Limits) -> Result<bool> {
        match *self {
            Property::NSep(n) => is_n_separating_with(family, n, limits),
            Property::Ij(i, j) => is_ij_separating_with(family, i, j, limits),
        }
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(format!("parameters out of range: need {what}")))
    }
}

fn family_where(k: usize, keep: impl Fn(u64) -> bool) -> SetFamily {
    SetFamily::from_members(
        k,
        (0..1u64 << k)
            .filter(|&c| keep(c))
            .map(|c| SubsetMask::from_bits(k, c).unwrap()),
    )
    .unwrap()
}

fn low_bits(count: usize, offset: usize) -> u64 {
    ((1u64 << count) - 1) << offset
}

/// The three implications (at `n = 2`, `(i, j) = (2, 2)` and `(1, 2)`) and the
/// six non-implications at their smallest valid parameters for `k >= 6`.
pub fn implication_suite(k: usize) -> Vec<Implication> {
    let mut kinds = vec![
        Implication::Monotone { i: 2, j: 2 },
        Implication::NnImpliesN { n: 2 },
        Implication::SumImpliesIj { i: 1, j: 2 },
        Implication::SumImpliesIj { i: 2, j: 2 },
        Implication::NSepNotNn { n: 2 },
        Implication::NSepNotIj { n: 2, i: 1, j: 3 },
        Implication::NSepNotIj { n: 2, i: 2, j: 2 },
        Implication::IjNotNSep { n: 2, j: 2 },
        Implication::NSepNotNextN { n: 2 },
    ];
    let j = k.div_ceil(2).max(2);
    if j + 2 <= k {
        kinds.push(Implication::IjNotNextIj { i: 1, j });
    }
    kinds.push(Implication::IjIncomparable {
        i: 1,
        j: 3,
        i2: 2,
        j2: 2,
    });
    kinds
}

pub fn check_implication(kind: Implication, k: usize, plan: &StressPlan) -> Result<VerdictReport> {
    check_implication_with(kind, k, plan, &Limits::default())
}

pub fn check_implication_with(
    kind: Implication,
    k: usize,
    plan: &StressPlan,
    limits: &Limits,
) -> Result<VerdictReport> {
    guard(
        "ground set for explicit families",
        k as u128,
        limits.max_materialize_k.min(24) as u128,
    )?;
    let mut report = VerdictReport::new(kind.name(), format!("{kind} k={k}"));
    match kind {
        Implication::Monotone { i, j } => {
            require(i + j <= k, "i + j <= k")?;
            let weaker: Vec<Property> = (0..=i).flat_map(|a| (0..=j).map(move |b| Property::Ij(a, b))).collect();
            stress(&mut report, k, plan, limits, Property::Ij(i, j), &weaker)?;
        }
        Implication::NnImpliesN { n } => {
            require(n >= 1 && 2 * n <= k, "1 <= n and 2n <= k")?;
            stress(&mut report, k, plan, limits, Property::Ij(n, n), &[Property::NSep(n)])?;
        }
        Implication::SumImpliesIj { i, j } => {
            require(i >= 1 && j >= 1 && i + j <= k, "i, j >= 1 and i + j <= k")?;
            stress(
                &mut report,
                k,
                plan,
                limits,
                Property::NSep(i + j - 1),
                &[Property::Ij(i, j)],
            )?;
        }
        Implication::NSepNotNn { n } => {
            require(n >= 1 && 2 * n <= k, "1 <= n and 2n <= k")?;
            let (b, b2) = (low_bits(n, 0), low_bits(n, n));
            let f = family_where(k, |c| (1..=n).contains(&(c.count_ones() as usize)) && c != b && c != b2);
            witness(&mut report, "F", &f, limits, Property::NSep(n), Property::Ij(n, n))?;
        }
        Implication::NSepNotIj { n, i, j } => {
            require(
                i >= 1 && j >= 1 && i + j >= n + 2 && i + j <= k,
                "i, j >= 1 and n + 2 <= i + j <= k",
            )?;
            let (b, b2) = (low_bits(i, 0), low_bits(j, i));
            let f = family_where(k, |c| c & b != b && c & b2 != b2);
            witness(&mut report, "F", &f, limits, Property::NSep(n), Property::Ij(i, j))?;
        }
        Implication::IjNotNSep { n, j } => {
            require(
                n >= 2 && n - 1 + j <= k && 2 * n <= k,
                "n >= 2, n - 1 + j <= k and 2n <= k",
            )?;
            let f = SetFamily::uniform(k, n - 1)?;
            witness(&mut report, "F", &f, limits, Property::Ij(n - 1, j), Property::NSep(n))?;
        }
        Implication::NSepNotNextN { n } => {
            require(n >= 1 && 2 * n + 2 <= k, "n >= 1 and 2n + 2 <= k")?;
            let f = SetFamily::uniform(k, n)?;
            witness(&mut report, "F", &f, limits, Property::NSep(n), Property::NSep(n + 1))?;
        }
        Implication::IjNotNextIj { i, j } => {
            require(i < j && i + j < k && k <= 2 * j, "i < j, i + j + 1 <= k and k <= 2j")?;
            let f = SetFamily::uniform(k, i)?;
            witness(&mut report, "F", &f, limits, Property::Ij(i, j), Property::Ij(i + 1, j))?;
            let g = SetFamily::uniform(k, k - j)?;
            witness(&mut report, "G", &g, limits, Property::Ij(i, j), Property::Ij(i, j + 1))?;
        }
        Implication::IjIncomparable { i, j, i2, j2 } => {
            require(
                i < i2 && i2 <= j2 && j2 < j && i + j <= k,
                "i < i2 <= j2 < j and i + j <= k",
            )?;
            let f = SetFamily::uniform(k, i)?;
            witness(&mut report, "F", &f, limits, Property::Ij(i, j), Property::Ij(i2, j2))?;
            let b = low_bits(i, 0);
            let g = family_where(k, |c| {
                let size = c.count_ones() as usize;
                (size == i2 && c & b != b) || (size == j2 && c & b == 0)
            });
            witness(&mut report, "G", &g, limits, Property::Ij(i2, j2), Property::Ij(i, j))?;
        }
    }
    Ok(report)
}

/// Verifies that `family` has `has` and lacks `lacks`.
fn witness(
    report: &mut VerdictReport,
    label: &str,
    family: &SetFamily,
    limits: &Limits,
    has: Property,
    lacks: Property,
) -> Result<()> {
    report.instances += 1;
    let holds = has.holds(family, limits)?;
    let fails = !lacks.holds(family, limits)?;
    if holds {
        report.premise_hits += 1;
    }
    let outcome = format!(
        "{label} ({} sets): {has} {}, {lacks} {}",
        family.len(),
        if holds { "yes" } else { "NO" },
        if fails { "no" } else { "YES" },
    );
    if holds && fails {
        report.note(outcome);
    } else {
        report.violation(outcome);
    }
    Ok(())
}

/// Random families whose members are each included with a probability drawn
/// uniformly from `(0, 1)`, so that sparse and dense families both occur.
fn stress(
    report: &mut VerdictReport,
    k: usize,
    plan: &StressPlan,
    limits: &Limits,
    premise: Property,
    conclusions: &[Property],
) -> Result<()> {
    let mut rng = seeded(plan.seed);
    for _ in 0..plan.families {
        let density: f64 = rng.gen_range(0.0..1.0);
        let members: Vec<u64> = (0..1u64 << k).filter(|_| rng.gen_bool(density)).collect();
        let family = SetFamily::from_members(k, members.into_iter().map(|c| SubsetMask::from_bits(k, c).unwrap()))?;
        report.instances += 1;
        if !premise.holds(&family, limits)? {
            continue;
        }
        report.premise_hits += 1;
        for c in conclusions {
            if !c.holds(&family, limits)? {
                report.violation(format!("{family:?} is {premise} but not {c}"));
            }
        }
    }
    report.note(format!(
        "premise: {premise}; {} families satisfied it",
        report.premise_hits
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(families: usize) -> StressPlan {
        StressPlan { families, seed: 7 }
    }

    #[test]
    fn counterexamples_hold_at_k6_and_k8() {
        let kinds = [
            Implication::NSepNotNn { n: 2 },
            Implication::NSepNotIj { n: 2, i: 2, j: 2 },
            Implication::NSepNotIj { n: 2, i: 1, j: 3 },
            Implication::IjNotNSep { n: 2, j: 2 },
            Implication::NSepNotNextN { n: 2 },
            Implication::IjIncomparable {
                i: 1,
                j: 3,
                i2: 2,
                j2: 2,
            },
        ];
        for k in [6, 8] {
            for kind in kinds {
                let r = check_implication(kind, k, &plan(0)).unwrap();
                assert!(r.passed, "{r}");
            }
        }
        assert!(
            check_implication(Implication::IjNotNextIj { i: 1, j: 3 }, 6, &plan(0))
                .unwrap()
                .passed
        );
        assert!(
            check_implication(Implication::IjNotNextIj { i: 1, j: 4 }, 8, &plan(0))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn positive_implications_survive_stress() {
        for kind in [
            Implication::NnImpliesN { n: 2 },
            Implication::SumImpliesIj { i: 1, j: 2 },
            Implication::SumImpliesIj { i: 2, j: 2 },
            Implication::Monotone { i: 2, j: 2 },
        ] {
            let r = check_implication(kind, 6, &plan(100)).unwrap();
            assert!(r.passed, "{r}");
            assert!(r.premise_hits > 0, "{r}");
        }
    }

    #[test]
    fn parameter_checks() {
        let err = check_implication(Implication::IjNotNextIj { i: 2, j: 2 }, 6, &plan(0));
        assert!(matches!(err, Err(Error::Domain(_))));
        let err = check_implication(Implication::NSepNotNn { n: 2 }, 14, &plan(0));
        assert!(err.unwrap_err().is_guard());
    }
}
