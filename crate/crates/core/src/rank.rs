//! Rank, nullity and the nullity conditions that decide whether `A = LU`
//! exists.
//!
//! For every leading index `k` three nullities are compared:
//!
//! * `null(A[1:k,1:k])`: the leading principal block,
//! * `null(A[:,1:k])`: the leading column block,
//! * `null(A[1:k,:]^T)`: the leading row block, transposed.
//!
//! A general factorization exists iff the first is at most the sum of the
//! other two for every `k`. A factorization with unit lower triangular `L`
//! exists iff the first equals the second; with unit upper triangular `U` iff
//! the first equals the third.
//!
//! Over `f64` every rank is tolerance dependent, so float reports are advisory
//! and record the tolerance that produced them.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Which existence condition is being asked about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    General,
    UnitLower,
    UnitUpper,
}

/// Nullities and verdicts for one leading index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullityRecord {
    pub k: usize,
    /// `null(A[1:k,1:k])`
    pub null_principal: usize,
    /// `null(A[:,1:k])`
    pub null_col_block: usize,
    /// `null(A[1:k,:]^T)`
    pub null_row_block: usize,
    pub general_ok: bool,
    pub unit_lower_ok: bool,
    pub unit_upper_ok: bool,
}

impl NullityRecord {
    fn new(k: usize, null_principal: usize, null_col_block: usize, null_row_block: usize) -> Self {
        NullityRecord {
            k,
            null_principal,
            null_col_block,
            null_row_block,
            general_ok: null_principal <= null_col_block + null_row_block,
            unit_lower_ok: null_principal == null_col_block,
            unit_upper_ok: null_principal == null_row_block,
        }
    }

    pub fn holds(&self, condition: Condition) -> bool {
        match condition {
            Condition::General => self.general_ok,
            Condition::UnitLower => self.unit_lower_ok,
            Condition::UnitUpper => self.unit_upper_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceReport {
    pub n: usize,
    pub per_k: Vec<NullityRecord>,
    pub general_exists: bool,
    pub unit_lower_exists: bool,
    pub unit_upper_exists: bool,
    /// Relative zero tolerance used for float input; `None` when exact.
    pub zero_tolerance: Option<f64>,
}

impl ExistenceReport {
    pub fn exists(&self, condition: Condition) -> bool {
        match condition {
            Condition::General => self.general_exists,
            Condition::UnitLower => self.unit_lower_exists,
            Condition::UnitUpper => self.unit_upper_exists,
        }
    }

    /// Smallest `k` at which `condition` fails.
    pub fn witness(&self, condition: Condition) -> Option<usize> {
        self.per_k.iter().find(|r| !r.holds(condition)).map(|r| r.k)
    }
}

/// Number of pivots in a row-echelon reduction of `a`.
///
/// Exact input takes the first nonzero entry of each column as pivot; float
/// input takes the largest magnitude and treats anything within the matrix's
/// zero tolerance as zero.
pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let zt = a.zero_test();
    let mut w: Vec<T> = a.entries().to_vec();
    let idx = |r: usize, c: usize| r * cols + c;
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        let mut best: Option<usize> = None;
        for r in pivot_row..rows {
            let x = &w[idx(r, c)];
            if zt.is_zero(x) {
                continue;
            }
            match best {
                None => best = Some(r),
                Some(b) if !T::EXACT && x.magnitude() > w[idx(b, c)].magnitude() => best = Some(r),
                Some(_) => {}
            }
            if T::EXACT {
                break;
            }
        }
        let Some(p) = best else { continue };
        if p != pivot_row {
            for cc in c..cols {
                w.swap(idx(p, cc), idx(pivot_row, cc));
            }
        }
        let pivot = w[idx(pivot_row, c)].clone();
        for r in pivot_row + 1..rows {
            if w[idx(r, c)].is_exact_zero() {
                continue;
            }
            let factor = w[idx(r, c)].clone() / pivot.clone();
            w[idx(r, c)] = T::zero();
            for cc in c + 1..cols {
                let delta = factor.clone() * w[idx(pivot_row, cc)].clone();
                w[idx(r, cc)] = w[idx(r, cc)].clone() - delta;
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Dimension of the right null space: `cols - rank`.
pub fn nullity<T: Scalar>(a: &Matrix<T>) -> usize {
    a.cols() - rank(a)
}

fn record_at<T: Scalar>(a: &Matrix<T>, k: usize) -> NullityRecord {
    let n = a.rows();
    // k <= n, so these ranges are always in bounds.
    let principal = a.submatrix(1, k, 1, k).expect("leading block");
    let col_block = a.submatrix(1, n, 1, k).expect("column block");
    let row_block_t = a.submatrix(1, k, 1, n).expect("row block").transpose();
    NullityRecord::new(
        k,
        nullity(&principal),
        nullity(&col_block),
        nullity(&row_block_t),
    )
}

fn require_square<T: Scalar>(a: &Matrix<T>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a.rows())
}

/// Evaluates all three existence conditions at every `k = 1..n`, each nullity
/// by an independent elimination.
pub fn existence_report<T: Scalar>(a: &Matrix<T>) -> Result<ExistenceReport> {
    let n = require_square(a)?;
    let per_k: Vec<NullityRecord> = (1..=n).map(|k| record_at(a, k)).collect();
    Ok(ExistenceReport {
        n,
        general_exists: per_k.iter().all(|r| r.general_ok),
        unit_lower_exists: per_k.iter().all(|r| r.unit_lower_ok),
        unit_upper_exists: per_k.iter().all(|r| r.unit_upper_ok),
        per_k,
        zero_tolerance: a.field().zero_tolerance(),
    })
}

/// Smallest `k` at which `condition` fails, scanning `k` upward and stopping
/// at the first failure.
pub(crate) fn first_violation<T: Scalar>(a: &Matrix<T>, condition: Condition) -> Option<usize> {
    (1..=a.rows()).find(|&k| !record_at(a, k).holds(condition))
}

/// Whether `null(B C) <= null(B) + null(C)` for square `B`, `C` of equal size.
/// Always true in exact arithmetic; kept as a test utility.
pub fn sylvester_nullity_check<T: Scalar>(b: &Matrix<T>, c: &Matrix<T>) -> Result<bool> {
    let n = require_square(b)?;
    require_square(c)?;
    if c.rows() != n {
        return Err(Error::DimensionMismatch {
            op: "sylvester_nullity_check",
            left_rows: b.rows(),
            left_cols: b.cols(),
            right_rows: c.rows(),
            right_cols: c.cols(),
        });
    }
    let bc = b.matmul(c)?;
    Ok(nullity(&bc) <= nullity(b) + nullity(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]])), 2);
        assert_eq!(rank(&Matrix::<Rational>::zeros(3, 2)), 0);
        assert_eq!(rank(&Matrix::<Rational>::zeros(0, 2)), 0);
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(&m(&[&[0]])), 1);
        assert_eq!(nullity(&Matrix::<Rational>::identity(4)), 0);
        assert_eq!(nullity(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]])), 1);
    }

    #[test]
    fn antidiagonal_report() {
        let rep = existence_report(&m(&[&[0, 1], &[1, 0]])).unwrap();
        let r1 = rep.per_k[0];
        assert_eq!(
            (r1.null_principal, r1.null_col_block, r1.null_row_block),
            (1, 0, 0)
        );
        assert!(!r1.general_ok);
        assert!(!rep.general_exists);
        assert_eq!(rep.witness(Condition::General), Some(1));
    }

    #[test]
    fn three_by_three_report() {
        let rep = existence_report(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        assert!(rep.general_exists);
        assert!(!rep.unit_lower_exists);
        let r2 = rep.per_k[1];
        assert_eq!((r2.null_principal, r2.null_col_block), (2, 1));
        assert_eq!(rep.witness(Condition::UnitLower), Some(2));
    }

    #[test]
    fn identity_report() {
        let rep = existence_report(&Matrix::<Rational>::identity(4)).unwrap();
        assert!(rep.general_exists && rep.unit_lower_exists && rep.unit_upper_exists);
        assert!(rep
            .per_k
            .iter()
            .all(|r| (r.null_principal, r.null_col_block, r.null_row_block) == (0, 0, 0)));
    }

    #[test]
    fn report_rejects_rectangular() {
        let err = existence_report(&Matrix::<Rational>::zeros(2, 3)).unwrap_err();
        assert_eq!(err, Error::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn sylvester_examples() {
        let i3 = Matrix::<Rational>::identity(3);
        assert!(sylvester_nullity_check(&i3, &i3).unwrap());
        let nil = m(&[&[0, 1], &[0, 0]]);
        assert!(sylvester_nullity_check(&nil, &nil).unwrap());
        assert!(sylvester_nullity_check(&i3, &nil).is_err());
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let a = Matrix::from_rows(alloc::vec![
            alloc::vec![1.0, 2.0],
            alloc::vec![2.0, 4.0 + 1e-12],
        ])
        .unwrap();
        assert_eq!(rank(&a), 1);
        let rep = existence_report(&a).unwrap();
        assert!(rep.zero_tolerance.is_some());
    }
}
