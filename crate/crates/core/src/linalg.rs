//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::poly::Rational;

/// Rows in reduced row echelon form, with the pivot column of each row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }
}

/// Reduced row echelon form; pivots are searched column by column from the left.
pub fn echelon(mut rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = Rational::from_integer(1.into()) / &rows[rank][col];
        for x in rows[rank].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots }
}

pub fn rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    echelon(rows, cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x, 1)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![row(&[1, 2]), row(&[2, 4])], 2), 1);
        assert_eq!(rank(vec![row(&[1, 2, 3]), row(&[0, 1, 1]), row(&[1, 3, 4])], 3), 2);
        assert_eq!(rank(vec![], 3), 0);
        assert_eq!(rank(vec![row(&[0, 0]), row(&[0, 5])], 2), 1);
    }

    #[test]
    fn reduces_against_pivots() {
        let e = echelon(vec![row(&[2, 0, 2]), row(&[0, 3, 3])], 3);
        assert_eq!(e.pivots, vec![0, 1]);
        let mut v = row(&[1, 1, 0]);
        e.reduce(&mut v);
        assert_eq!(v, vec![rational(0, 1), rational(0, 1), rational(-2, 1)]);
    }
}
