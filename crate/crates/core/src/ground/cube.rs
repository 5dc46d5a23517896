use std::fmt;

use crate::error::{Error, Result};

/// A set of distinct vertices of the Hamming cube `Q_m`, stored ascending.
///
/// Vertex `v` is an `m`-bit number; coordinate `i` (row `i` of a matrix
/// representation, 0-based) is bit `m - 1 - i`, so row 0 is most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubePointSet {
    m: usize,
    points: Vec<u64>,
}

impl CubePointSet {
    pub fn new<I: IntoIterator<Item = u64>>(m: usize, points: I) -> Result<Self> {
        if m > 63 {
            return Err(Error::domain(format!("cube dimension {m} exceeds 63")));
        }
        let mut points: Vec<u64> = points.into_iter().collect();
        if let Some(&p) = points.iter().find(|&&p| p >> m != 0) {
            return Err(Error::domain(format!("point {p:#b} has more than {m} bits")));
        }
        points.sort_unstable();
        let before = points.len();
        points.dedup();
        if points.len() != before {
            return Err(Error::domain("cube point set has repeated points"));
        }
        Ok(CubePointSet { m, points })
    }

    /// Every vertex of `Q_m`.
    pub fn full(m: usize) -> Result<Self> {
        if m > 20 {
            return Err(Error::domain(format!("full cube of dimension {m} is too large")));
        }
        Self::new(m, 0..1u64 << m)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The complementary point set `Q_m \ C`.
    pub fn complement(&self) -> Result<Self> {
        if self.m > 20 {
            return Err(Error::domain("complement of a large cube point set"));
        }
        let mut out = Vec::with_capacity((1usize << self.m) - self.points.len());
        let mut it = self.points.iter().peekable();
        for v in 0..1u64 << self.m {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        Ok(CubePointSet { m: self.m, points: out })
    }
}

impl fmt::Debug for CubePointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}{{", self.m)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{:0width$b}", p, width = self.m.max(1))?;
        }
        f.write_str("}")
    }
}
