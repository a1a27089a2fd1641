use alloc::vec;
use alloc::vec::Vec;

use super::{active_zero_test, from_columns, from_row_vecs, one_based, require_square, Factorization};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rank::{first_violation, Condition};
use crate::scalar::{Scalar, ZeroTest};

/// Working state of the restricted-pivot elimination. `rows[t..]` and
/// `cols[t..]` are the physical indices of the active Schur complement, in
/// logical order; positions before `t` hold the pivots already taken.
struct Elimination<T: Scalar> {
    s: Matrix<T>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    lower_cols: Vec<Vec<T>>,
    upper_rows: Vec<Vec<T>>,
    ambiguous: bool,
}

impl<T: Scalar> Elimination<T> {
    fn column_is_zero(&self, t: usize, c: usize, zt: &ZeroTest) -> bool {
        self.rows[t..].iter().all(|&i| zt.is_zero(self.s.at(i, c)))
    }

    fn row_is_zero(&self, t: usize, r: usize, zt: &ZeroTest) -> bool {
        self.cols[t..].iter().all(|&j| zt.is_zero(self.s.at(r, j)))
    }

    /// Writes exact zeros over a column classified as zero.
    fn clear_column(&mut self, t: usize, c: usize) {
        for k in t..self.rows.len() {
            let i = self.rows[k];
            *self.s.at_mut(i, c) = T::zero();
        }
    }

    fn clear_row(&mut self, t: usize, r: usize) {
        for k in t..self.cols.len() {
            let j = self.cols[k];
            *self.s.at_mut(r, j) = T::zero();
        }
    }

    /// Smallest logical position after `t` whose `value` is nonzero.
    fn first_after(&mut self, t: usize, zt: &ZeroTest, value: impl Fn(&Self, usize) -> T) -> Option<usize> {
        let n = self.rows.len();
        let k = (t + 1..n).find(|&k| !zt.is_zero(&value(self, k)))?;
        self.ambiguous |= zt.is_ambiguous(&value(self, k));
        Some(k)
    }

    /// One step of Gaussian elimination on the pivot at logical `(t, t)`.
    fn eliminate(&mut self, t: usize, zt: &ZeroTest) {
        let n = self.rows.len();
        let (r, c) = (self.rows[t], self.cols[t]);
        let pivot = self.s.at(r, c).clone();
        self.ambiguous |= zt.is_ambiguous(&pivot);

        let mut lcol = vec![T::zero(); n];
        let mut urow = vec![T::zero(); n];
        lcol[r] = T::one();
        urow[c] = pivot.clone();
        for &j in &self.cols[t + 1..] {
            urow[j] = self.s.at(r, j).clone();
        }
        for k in t + 1..n {
            let i = self.rows[k];
            let x = self.s.at(i, c).clone();
            if x.is_exact_zero() {
                continue;
            }
            let factor = x / pivot.clone();
            for &j in &self.cols[t + 1..] {
                if urow[j].is_exact_zero() {
                    continue;
                }
                let updated = self.s.at(i, j).clone() - factor.clone() * urow[j].clone();
                *self.s.at_mut(i, j) = updated;
            }
            lcol[i] = factor;
        }
        self.lower_cols.push(lcol);
        self.upper_rows.push(urow);
    }
}

/// Factors square `A` as `A = LU` without permuting `A`, or reports that no
/// such factorization exists.
///
/// Elimination runs on the active Schur complement. When the current pivot is
/// zero:
///
/// * zero column, nonzero row: the column is deferred and the first column
///   (in logical order) with a nonzero entry in the current row takes its
///   place;
/// * zero row, nonzero column: the same with rows;
/// * both zero: stop if the whole active block is zero (the rank is reached),
///   otherwise bring in the first nonzero column and then the first row with
///   a nonzero entry in it;
/// * both nonzero: no factorization exists.
///
/// Deferrals are recorded in `row_map`/`col_map`; `A` is never reordered. On
/// failure the error carries the smallest `k` violating the existence
/// condition.
pub fn lu_general<T: Scalar>(a: &Matrix<T>) -> Result<Factorization<T>> {
    let n = require_square(a)?;
    let field = a.field();
    let mut e = Elimination {
        s: a.clone(),
        rows: (0..n).collect(),
        cols: (0..n).collect(),
        lower_cols: Vec::new(),
        upper_rows: Vec::new(),
        ambiguous: false,
    };

    let mut t = 0;
    while t < n {
        let zt = active_zero_test(&e.s, &e.rows[t..], &e.cols[t..], field);
        let (r, c) = (e.rows[t], e.cols[t]);
        if zt.is_zero(e.s.at(r, c)) {
            let col_zero = e.column_is_zero(t, c, &zt);
            let row_zero = e.row_is_zero(t, r, &zt);
            match (col_zero, row_zero) {
                (true, false) => {
                    let k = e
                        .first_after(t, &zt, |e, k| e.s.at(r, e.cols[k]).clone())
                        .expect("nonzero row has a nonzero entry after the pivot");
                    e.clear_column(t, c);
                    e.cols.swap(t, k);
                }
                (false, true) => {
                    let k = e
                        .first_after(t, &zt, |e, k| e.s.at(e.rows[k], c).clone())
                        .expect("nonzero column has a nonzero entry below the pivot");
                    e.clear_row(t, r);
                    e.rows.swap(t, k);
                }
                (true, true) => {
                    let next_col = (t + 1..n).find(|&k| !e.column_is_zero(t, e.cols[k], &zt));
                    let Some(j) = next_col else {
                        break;
                    };
                    let cj = e.cols[j];
                    let i = e
                        .first_after(t, &zt, |e, k| e.s.at(e.rows[k], cj).clone())
                        .expect("nonzero column has a nonzero entry below the zero row");
                    e.clear_column(t, c);
                    e.clear_row(t, r);
                    e.cols.swap(t, j);
                    e.rows.swap(t, i);
                }
                (false, false) => {
                    let witness_k = first_violation(a, Condition::General).unwrap_or(t + 1);
                    return Err(Error::NotFactorizable { witness_k });
                }
            }
        }
        e.eliminate(t, &zt);
        t += 1;
    }

    Ok(Factorization {
        lower: from_columns(n, &e.lower_cols, field),
        upper: from_row_vecs(n, &e.upper_rows, field),
        rank: t,
        row_map: one_based(&e.rows),
        col_map: one_based(&e.cols),
        ambiguous: e.ambiguous,
    })
}
