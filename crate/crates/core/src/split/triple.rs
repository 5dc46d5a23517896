use crate::error::{Error, Result};
use crate::ground::SubsetMask;
use crate::split::splits;

/// The seven regions of the Venn diagram of three sets `A, B, C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VennSectors3 {
    pub a: SubsetMask,
    pub b: SubsetMask,
    pub c: SubsetMask,
    pub ab: SubsetMask,
    pub ac: SubsetMask,
    pub bc: SubsetMask,
    pub abc: SubsetMask,
}

impl VennSectors3 {
    pub fn new(a: &SubsetMask, b: &SubsetMask, c: &SubsetMask) -> Result<Self> {
        a.same_k(b)?;
        a.same_k(c)?;
        let (na, nb, nc) = (a.complement(), b.complement(), c.complement());
        Ok(VennSectors3 {
            a: a.intersection(&nb).intersection(&nc),
            b: na.intersection(b).intersection(&nc),
            c: na.intersection(&nb).intersection(c),
            ab: a.intersection(b).intersection(&nc),
            ac: a.intersection(&nb).intersection(c),
            bc: na.intersection(b).intersection(c),
            abc: a.intersection(b).intersection(c),
        })
    }

    /// Sizes in the order `a, b, c, ab, ac, bc, abc`.
    pub fn sizes(&self) -> [usize; 7] {
        [
            self.a.len(),
            self.b.len(),
            self.c.len(),
            self.ab.len(),
            self.ac.len(),
            self.bc.len(),
            self.abc.len(),
        ]
    }

    /// The one unsplittable configuration: the three pairwise sectors are odd
    /// and nothing else is occupied.
    pub fn is_parity_obstruction(&self) -> bool {
        let [a, b, c, ab, ac, bc, abc] = self.sizes();
        a + b + c + abc == 0 && ab % 2 == 1 && ac % 2 == 1 && bc % 2 == 1
    }
}

/// Splittability of three sets from sector sizes alone.
pub fn triple_splittable_parity(b1: &SubsetMask, b2: &SubsetMask, b3: &SubsetMask) -> Result<bool> {
    Ok(!VennSectors3::new(b1, b2, b3)?.is_parity_obstruction())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

/// `count` elements of `sector` chosen as the lowest ones.
fn take(sector: &SubsetMask, count: usize) -> SubsetMask {
    sector.lowest(count)
}

fn half(sector: &SubsetMask, round: Round) -> SubsetMask {
    let n = sector.len();
    take(sector, if round == Round::Up { n.div_ceil(2) } else { n / 2 })
}

/// A simultaneous splitter of three sets, or `None` for the parity obstruction.
///
/// With no outer sectors (`R_A = R_B = R_C = ∅`): even sectors are halved; one
/// odd sector rounds either way; two odd sectors round one up and one down.
/// Three or four odd sectors:
/// * all four odd, or `R_ABC` and two pairwise sectors odd: `R_ABC` up, the
///   odd pairwise sectors down;
/// * the three pairwise sectors odd and `R_ABC` even (so `|R_ABC| >= 2`): the
///   pairwise sectors up and `|S ∩ R_ABC| = |R_ABC|/2 - 1`.
///
/// With outer sectors: split the reduced configuration, then give each outer
/// sector the rounding that cancels its set's deviation. If the reduced
/// configuration is the obstruction and `R_X` is the first nonempty outer
/// sector, the two pairwise sectors inside `X` round down, the third rounds
/// up, `|S ∩ R_X| = ⌊|R_X|/2⌋ + 1`, and the other outer sectors are halved.
///
/// The result is checked against all three inputs before it is returned.
pub fn build_triple_splitter(b1: &SubsetMask, b2: &SubsetMask, b3: &SubsetMask) -> Result<Option<SubsetMask>> {
    let v = VennSectors3::new(b1, b2, b3)?;
    if v.is_parity_obstruction() {
        return Ok(None);
    }
    let outer_empty = v.a.is_empty() && v.b.is_empty() && v.c.is_empty();
    let reduced_blocked = v.abc.is_empty() && [&v.ab, &v.ac, &v.bc].iter().all(|s| s.len() % 2 == 1);

    let s = if outer_empty || !reduced_blocked {
        let inner = inner_splitter(&v);
        if outer_empty {
            inner
        } else {
            absorb_outer(&v, inner)
        }
    } else {
        // Rotate so that X is the first nonempty outer sector; `near` are the
        // pairwise sectors inside X, `far` the opposite one.
        let (x, others, near, far) = if !v.a.is_empty() {
            (&v.a, [&v.b, &v.c], [&v.ab, &v.ac], &v.bc)
        } else if !v.b.is_empty() {
            (&v.b, [&v.a, &v.c], [&v.ab, &v.bc], &v.ac)
        } else {
            (&v.c, [&v.a, &v.b], [&v.ac, &v.bc], &v.ab)
        };
        let mut s = take(x, x.len() / 2 + 1);
        for n in near {
            s = s.union(&half(n, Round::Down));
        }
        s = s.union(&half(far, Round::Up));
        for o in others {
            s = s.union(&half(o, Round::Down));
        }
        s
    };

    for b in [b1, b2, b3] {
        if !splits(&s, b)? {
            return Err(Error::ConstructionBug(format!(
                "triple splitter {s} fails to split {b} (sectors {:?})",
                v.sizes()
            )));
        }
    }
    Ok(Some(s))
}

/// Splitter of the configuration with the outer sectors removed.
fn inner_splitter(v: &VennSectors3) -> SubsetMask {
    let pairwise = [&v.ab, &v.ac, &v.bc];
    let odd_pairwise = pairwise.iter().filter(|s| s.len() % 2 == 1).count();
    let abc_odd = v.abc.len() % 2 == 1;
    let odd = odd_pairwise + abc_odd as usize;

    let mut s = SubsetMask::empty(v.abc.k());
    match odd {
        0..=2 => {
            // Alternate roundings over the odd sectors: up, down.
            let mut next = Round::Up;
            for sector in [&v.abc, &v.ab, &v.ac, &v.bc] {
                let r = if sector.len() % 2 == 1 {
                    let r = next;
                    next = Round::Down;
                    r
                } else {
                    Round::Down
                };
                s = s.union(&half(sector, r));
            }
        }
        _ if abc_odd => {
            s = s.union(&half(&v.abc, Round::Up));
            for sector in pairwise {
                s = s.union(&half(sector, Round::Down));
            }
        }
        _ => {
            s = s.union(&take(&v.abc, v.abc.len() / 2 - 1));
            for sector in pairwise {
                s = s.union(&half(sector, Round::Up));
            }
        }
    }
    s
}

/// Extends a splitter of the reduced configuration over the outer sectors.
fn absorb_outer(v: &VennSectors3, inner: SubsetMask) -> SubsetMask {
    let mut s = inner.clone();
    for (outer, touching) in [(&v.a, [&v.ab, &v.ac]), (&v.b, [&v.ab, &v.bc]), (&v.c, [&v.ac, &v.bc])] {
        // Twice the deviation of |S ∩ X| from |X|/2 on the reduced part of X.
        let mut size = v.abc.len();
        let mut inside = inner.intersection_len(&v.abc);
        for t in touching {
            size += t.len();
            inside += inner.intersection_len(t);
        }
        let deviation = 2 * inside as i64 - size as i64;
        let round = if deviation > 0 { Round::Down } else { Round::Up };
        s = s.union(&half(outer, round));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::SetCollection;
    use crate::rng::{random_subset, seeded};
    use crate::split::is_splittable;

    fn mask(k: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(k, e.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        let (x, y, z) = (mask(5, &[1, 2]), mask(5, &[2, 3]), mask(5, &[1, 3]));
        assert!(!triple_splittable_parity(&x, &y, &z).unwrap());
        assert_eq!(build_triple_splitter(&x, &y, &z).unwrap(), None);
        let x5 = mask(5, &[1, 2, 5]);
        assert!(triple_splittable_parity(&x5, &y, &z).unwrap());
        assert!(build_triple_splitter(&x5, &y, &z).unwrap().is_some());
        let d = [mask(6, &[1, 2]), mask(6, &[3, 4]), mask(6, &[5, 6])];
        assert!(triple_splittable_parity(&d[0], &d[1], &d[2]).unwrap());
        let s = build_triple_splitter(&d[0], &d[1], &d[2]).unwrap().unwrap();
        assert_eq!(s, mask(6, &[1, 3, 5]));
    }

    #[test]
    fn sectors_partition_the_union() {
        let mut rng = seeded(4);
        for _ in 0..200 {
            let k = 70;
            let (x, y, z) = (
                random_subset(k, &mut rng),
                random_subset(k, &mut rng),
                random_subset(k, &mut rng),
            );
            let v = VennSectors3::new(&x, &y, &z).unwrap();
            let [a, b, c, ab, ac, bc, abc] = v.sizes();
            assert_eq!(x.len(), a + ab + ac + abc);
            assert_eq!(y.len(), b + ab + bc + abc);
            assert_eq!(z.len(), c + ac + bc + abc);
            assert_eq!(x.union(&y).union(&z).len(), a + b + c + ab + ac + bc + abc);
        }
    }

    #[test]
    fn subcase_three_needs_the_corrected_rounding() {
        // ab, ac, bc = 1 each and abc = 2: pairwise up, one element of abc.
        let (x, y, z) = (mask(5, &[1, 2, 4, 5]), mask(5, &[1, 3, 4, 5]), mask(5, &[2, 3, 4, 5]));
        let s = build_triple_splitter(&x, &y, &z).unwrap().unwrap();
        for b in [&x, &y, &z] {
            assert!(splits(&s, b).unwrap());
        }
    }

    /// Every ordered triple over [5] against the brute-force oracle.
    #[test]
    fn agrees_with_brute_force_on_all_triples_over_5() {
        let k = 5;
        let all: Vec<SubsetMask> = (0..32).map(|b| SubsetMask::from_bits(k, b).unwrap()).collect();
        for x in &all {
            for y in &all {
                for z in &all {
                    let c = SetCollection::new(vec![x.clone(), y.clone(), z.clone()]).unwrap();
                    let brute = is_splittable(&c).unwrap().is_some();
                    assert_eq!(triple_splittable_parity(x, y, z).unwrap(), brute, "{c}");
                    assert_eq!(build_triple_splitter(x, y, z).unwrap().is_some(), brute, "{c}");
                }
            }
        }
    }
}
