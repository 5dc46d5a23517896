use crate::error::{Error, Result};
use crate::ground::BinaryMatrix;

fn distance_range(m: &BinaryMatrix) -> Result<(usize, usize)> {
    if m.cols() < 2 {
        return Err(Error::domain("need at least two columns"));
    }
    let cols = m.columns();
    let (mut lo, mut hi) = (usize::MAX, 0);
    for (a, ca) in cols.iter().enumerate() {
        for cb in &cols[a + 1..] {
            let d: usize = ca
                .words()
                .iter()
                .zip(cb.words())
                .map(|(x, y)| (x ^ y).count_ones() as usize)
                .sum();
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    Ok((lo, hi))
}

/// Minimum Hamming distance over all pairs of columns.
pub fn min_pairwise_column_distance(m: &BinaryMatrix) -> Result<usize> {
    Ok(distance_range(m)?.0)
}

/// `(min, max)` Hamming distance over all pairs of columns.
pub fn column_distance_range(m: &BinaryMatrix) -> Result<(usize, usize)> {
    distance_range(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{family_to_matrix, SetFamily};

    #[test]
    fn power_set_columns_are_equidistant() {
        let m = family_to_matrix(&SetFamily::power_set(3).unwrap()).unwrap();
        assert_eq!(column_distance_range(&m).unwrap(), (4, 4));
    }

    #[test]
    fn equal_columns_and_small_matrices() {
        let m = BinaryMatrix::from_strings(&["1101"]).unwrap();
        assert_eq!(min_pairwise_column_distance(&m).unwrap(), 0);
        let one = BinaryMatrix::from_strings(&["1"]).unwrap();
        assert!(matches!(min_pairwise_column_distance(&one), Err(Error::Domain(_))));
    }

    #[test]
    fn two_sep_fixture_is_a_distance_two_code() {
        let m = BinaryMatrix::from_strings(&["11110000", "11001100", "10101010", "00111100", "01011010", "01100110"])
            .unwrap();
        assert!(min_pairwise_column_distance(&m).unwrap() >= 2);
    }
}
