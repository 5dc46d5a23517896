use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{SetFamily, SubsetMask};

/// An `m × k` 0/1 matrix stored row-wise; row `i` is a subset of the column set.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<SubsetMask>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<SubsetMask>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::domain("matrix needs at least one row"))?;
        let cols = first.k();
        for r in &rows {
            first.same_k(r)?;
        }
        Ok(BinaryMatrix { cols, rows })
    }

    /// Parses rows written as strings of `'0'`/`'1'`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, r)| parse_row(r.as_ref(), i + 1))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SubsetMask {
        &self.rows[i]
    }

    pub fn row_masks(&self) -> &[SubsetMask] {
        &self.rows
    }

    /// Entry `(i, j)`, both 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].bit(j)
    }

    /// Column `j` (0-based) as a subset of the row indices.
    pub fn column(&self, j: usize) -> SubsetMask {
        let mut c = SubsetMask::empty(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.bit(j) {
                c.set_bit(i);
            }
        }
        c
    }

    /// All columns, transposed in one pass.
    pub fn columns(&self) -> Vec<SubsetMask> {
        let m = self.rows.len();
        let mut cols = vec![SubsetMask::empty(m); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.positions() {
                cols[j].set_bit(i);
            }
        }
        cols
    }

    /// Column indices sorted as `m`-bit numbers with row 0 most significant.
    ///
    /// LSD radix sort with one stable binary pass per row: `O(m·k)` bit tests.
    pub fn sorted_column_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cols).collect();
        let mut scratch = Vec::with_capacity(self.cols);
        for row in self.rows.iter().rev() {
            let words = row.words();
            scratch.clear();
            scratch.extend(order.iter().copied().filter(|&j| (words[j >> 6] >> (j & 63)) & 1 == 0));
            scratch.extend(order.iter().copied().filter(|&j| (words[j >> 6] >> (j & 63)) & 1 == 1));
            std::mem::swap(&mut order, &mut scratch);
        }
        order
    }

    fn columns_equal(&self, a: usize, b: usize) -> bool {
        self.rows.iter().all(|r| r.bit(a) == r.bit(b))
    }

    /// First pair of equal columns (0-based, `a < b`), found after radix sorting.
    pub fn find_equal_columns(&self) -> Option<(usize, usize)> {
        let order = self.sorted_column_order();
        order
            .windows(2)
            .find(|w| self.columns_equal(w[0], w[1]))
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    pub fn has_distinct_columns(&self) -> bool {
        self.find_equal_columns().is_none()
    }

    /// Hamming distance between columns `a` and `b`.
    pub fn column_distance(&self, a: usize, b: usize) -> usize {
        self.rows.iter().filter(|r| r.bit(a) != r.bit(b)).count()
    }
}

fn parse_row(s: &str, line: usize) -> Result<SubsetMask> {
    let s = s.trim_end_matches('\r');
    if s.is_empty() {
        return Err(Error::parse(line, "empty matrix row"));
    }
    let mut m = SubsetMask::empty(s.len());
    for (j, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => m.set_bit(j),
            other => return Err(Error::parse(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(m)
}

pub(crate) fn parse_matrix_row(s: &str, line: usize) -> Result<SubsetMask> {
    parse_row(s, line)
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            for j in 0..self.cols {
                f.write_str(if r.bit(j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows(), self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// The matrix representation: row `i` is the characteristic vector of member `i`.
pub fn family_to_matrix(family: &SetFamily) -> Result<BinaryMatrix> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    BinaryMatrix::from_rows(family.members().to_vec())
}

/// The family of row sets. Repeated rows collapse; the flag reports whether any did.
pub fn matrix_to_family(matrix: &BinaryMatrix) -> (SetFamily, bool) {
    let (family, dropped) = SetFamily::from_members_counting(matrix.cols(), matrix.row_masks().iter().cloned())
        .expect("rows share the column count");
    (family, dropped > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_sep_fixture() -> SetFamily {
        SetFamily::from_element_lists(8, [vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![1, 3, 5, 7]]).unwrap()
    }

    #[test]
    fn min_sep_fixture_matrix() {
        let m = family_to_matrix(&min_sep_fixture()).unwrap();
        assert_eq!(m.to_string(), "11110000\n11001100\n10101010\n");
        let (back, dup) = matrix_to_family(&m);
        assert!(!dup);
        assert_eq!(back, min_sep_fixture());
    }

    #[test]
    fn empty_and_full_rows() {
        let f = SetFamily::from_members(3, [SubsetMask::empty(3)]).unwrap();
        assert_eq!(family_to_matrix(&f).unwrap().to_string(), "000\n");
        let g = SetFamily::from_members(4, [SubsetMask::full(4)]).unwrap();
        assert_eq!(family_to_matrix(&g).unwrap().to_string(), "1111\n");
        assert_eq!(family_to_matrix(&SetFamily::new(4).unwrap()), Err(Error::EmptyFamily));
    }

    #[test]
    fn duplicate_rows_collapse() {
        let m = BinaryMatrix::from_strings(&["10", "10"]).unwrap();
        let (f, dup) = matrix_to_family(&m);
        assert!(dup);
        assert_eq!(f.len(), 1);
        assert_eq!(f.members()[0].elements(), vec![1]);

        let z = BinaryMatrix::from_strings(&["0"]).unwrap();
        let (f, dup) = matrix_to_family(&z);
        assert!(!dup);
        assert!(f.members()[0].is_empty());
    }

    #[test]
    fn radix_order_sorts_columns_msb_first() {
        let m = BinaryMatrix::from_strings(&["0110", "1010"]).unwrap();
        // Column values (row 0 = MSB): 01, 10, 11, 00.
        assert_eq!(m.sorted_column_order(), vec![3, 0, 1, 2]);
        assert!(m.has_distinct_columns());
        let d = BinaryMatrix::from_strings(&["0110", "1001"]).unwrap();
        assert_eq!(d.find_equal_columns(), Some((0, 3)));
        let e = BinaryMatrix::from_strings(&["0110", "1111"]).unwrap();
        assert_eq!(e.find_equal_columns(), Some((0, 3)));
    }

    #[test]
    fn malformed_rows() {
        assert!(BinaryMatrix::from_strings(&["10", "1"]).is_err());
        assert!(matches!(
            BinaryMatrix::from_strings(&["1x"]),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
