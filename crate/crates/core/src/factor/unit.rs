use alloc::vec;
use alloc::vec::Vec;

use super::{active_zero_test, from_columns, from_row_vecs, one_based, require_square, UnitFactorization, UnitSide};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rank::{first_violation, Condition};
use crate::scalar::Scalar;

/// `A = LU` with `L` unit lower triangular, or the smallest `k` at which
/// `null(A[1:k,1:k]) = null(A[:,1:k])` fails.
///
/// Rows are never reordered. At a zero pivot the active column must be zero;
/// if the active row is nonzero the column is deferred rightward in favor of
/// the first column with a nonzero entry in that row, and if the row is zero
/// as well the step emits `L[:,j] = e_j`, `U[j,:] = 0` and moves on.
pub fn lu_unit_lower<T: Scalar>(a: &Matrix<T>) -> Result<UnitFactorization<T>> {
    let n = require_square(a)?;
    let field = a.field();
    let mut s = a.clone();
    let mut cols: Vec<usize> = (0..n).collect();
    let rows: Vec<usize> = (0..n).collect();
    let mut lower_cols: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut upper_rows: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut dependent = Vec::new();
    let mut ambiguous = false;

    for t in 0..n {
        let zt = active_zero_test(&s, &rows[t..], &cols[t..], field);
        let c = cols[t];
        if zt.is_zero(s.at(t, c)) {
            if !(t..n).all(|i| zt.is_zero(s.at(i, c))) {
                let witness_k = first_violation(a, Condition::UnitLower).unwrap_or(t + 1);
                return Err(Error::NotFactorizable { witness_k });
            }
            for i in t..n {
                *s.at_mut(i, c) = T::zero();
            }
            match (t + 1..n).find(|&k| !zt.is_zero(s.at(t, cols[k]))) {
                Some(k) => {
                    ambiguous |= zt.is_ambiguous(s.at(t, cols[k]));
                    cols.swap(t, k);
                }
                None => {
                    for &j in &cols[t..] {
                        *s.at_mut(t, j) = T::zero();
                    }
                    let mut e = vec![T::zero(); n];
                    e[t] = T::one();
                    lower_cols.push(e);
                    upper_rows.push(vec![T::zero(); n]);
                    dependent.push(t + 1);
                    continue;
                }
            }
        }

        let c = cols[t];
        let pivot = s.at(t, c).clone();
        ambiguous |= zt.is_ambiguous(&pivot);
        let mut lcol = vec![T::zero(); n];
        let mut urow = vec![T::zero(); n];
        lcol[t] = T::one();
        urow[c] = pivot.clone();
        for &j in &cols[t + 1..] {
            urow[j] = s.at(t, j).clone();
        }
        for (i, l) in lcol.iter_mut().enumerate().skip(t + 1) {
            let x = s.at(i, c).clone();
            if x.is_exact_zero() {
                continue;
            }
            let factor = x / pivot.clone();
            for &j in &cols[t + 1..] {
                if urow[j].is_exact_zero() {
                    continue;
                }
                let updated = s.at(i, j).clone() - factor.clone() * urow[j].clone();
                *s.at_mut(i, j) = updated;
            }
            *l = factor;
        }
        lower_cols.push(lcol);
        upper_rows.push(urow);
    }

    Ok(UnitFactorization {
        lower: from_columns(n, &lower_cols, field),
        upper: from_row_vecs(n, &upper_rows, field),
        unit_side: UnitSide::Lower,
        index_map: one_based(&cols),
        rank: n - dependent.len(),
        dependent,
        ambiguous,
    })
}

/// `A = LU` with `U` unit upper triangular: the unit-lower factorization of
/// `A^T`, transposed back with the factors swapped. Fails at the smallest `k`
/// where `null(A[1:k,1:k]) = null(A[1:k,:]^T)` does not hold.
pub fn lu_unit_upper<T: Scalar>(a: &Matrix<T>) -> Result<UnitFactorization<T>> {
    require_square(a)?;
    let f = lu_unit_lower(&a.transpose())?;
    Ok(UnitFactorization {
        lower: f.upper.transpose(),
        upper: f.lower.transpose(),
        unit_side: UnitSide::Upper,
        index_map: f.index_map,
        dependent: f.dependent,
        rank: f.rank,
        ambiguous: f.ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn no_column_pivoting_works() {
        let err = lu_unit_lower(&m(&[&[0, 0], &[1, 1]])).unwrap_err();
        assert_eq!(err, Error::NotFactorizable { witness_k: 1 });
    }

    #[test]
    fn identity_is_its_own_factor() {
        let i4 = Matrix::<Rational>::identity(4);
        let f = lu_unit_lower(&i4).unwrap();
        assert_eq!(f.lower, i4);
        assert_eq!(f.upper, i4);
        let g = lu_unit_upper(&i4).unwrap();
        assert_eq!(g.lower, i4);
        assert_eq!(g.upper, i4);
    }

    #[test]
    fn zero_two_by_two() {
        let f = lu_unit_lower(&Matrix::<Rational>::zeros(2, 2)).unwrap();
        assert_eq!(f.lower, Matrix::identity(2));
        assert_eq!(f.upper, Matrix::zeros(2, 2));
        assert_eq!(f.dependent, [1, 2]);
        assert_eq!(f.rank, 0);
    }

    #[test]
    fn unit_upper_rejects_nilpotent_block() {
        let err = lu_unit_upper(&m(&[&[0, 1], &[0, 0]])).unwrap_err();
        assert_eq!(err, Error::NotFactorizable { witness_k: 1 });
    }

    #[test]
    fn deferred_column_case() {
        // Column 1 is zero but row 1 is not: column 2 takes its place.
        let a = m(&[&[0, 2, 1], &[0, 4, 3], &[0, 0, 5]]);
        let f = lu_unit_lower(&a).unwrap();
        assert_eq!(f.lower.matmul(&f.upper).unwrap(), a);
        assert_eq!(f.index_map[0], 2);
        assert!((1..=3).all(|i| f.lower[(i, i)] == Rational::from_i64(1)));
    }

    #[test]
    fn transpose_duality() {
        let a = m(&[&[0, 2, 1], &[0, 4, 3], &[0, 0, 5]]);
        let f = lu_unit_lower(&a).unwrap();
        let g = lu_unit_upper(&a.transpose()).unwrap();
        assert_eq!(g.lower, f.upper.transpose());
        assert_eq!(g.upper, f.lower.transpose());
    }
}
