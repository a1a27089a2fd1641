use alloc::vec::Vec;

use super::{active_zero_test, one_based, require_square, PivotedFactorization};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::rank::rank;
use crate::scalar::{Scalar, ZeroTest};

/// Exact fields take the first nonzero candidate, float fields the largest
/// magnitude.
fn pick_pivot<T: Scalar>(
    candidates: impl Iterator<Item = (usize, usize)>,
    s: &Matrix<T>,
    zt: &ZeroTest,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), f64)> = None;
    for (r, c) in candidates {
        let x = s.at(r, c);
        if zt.is_zero(x) {
            continue;
        }
        if T::EXACT {
            return Some((r, c));
        }
        let mag = x.magnitude();
        if best.is_none_or(|(_, m)| mag > m) {
            best = Some(((r, c), mag));
        }
    }
    best.map(|(p, _)| p)
}

fn swap_rows<T: Scalar>(s: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..s.cols() {
        let tmp = s.at(a, c).clone();
        *s.at_mut(a, c) = s.at(b, c).clone();
        *s.at_mut(b, c) = tmp;
    }
}

fn swap_cols<T: Scalar>(s: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..s.rows() {
        let tmp = s.at(r, a).clone();
        *s.at_mut(r, a) = s.at(r, b).clone();
        *s.at_mut(r, b) = tmp;
    }
}

/// Eliminates below and right of the pivot at `(t, t)`, storing multipliers in
/// column `t` below the diagonal (packed LU storage).
fn eliminate_packed<T: Scalar>(s: &mut Matrix<T>, t: usize) {
    let (rows, cols) = s.shape();
    let pivot = s.at(t, t).clone();
    for r in t + 1..rows {
        let x = s.at(r, t).clone();
        if x.is_exact_zero() {
            continue;
        }
        let factor = x / pivot.clone();
        for c in t + 1..cols {
            let u = s.at(t, c).clone();
            if u.is_exact_zero() {
                continue;
            }
            let updated = s.at(r, c).clone() - factor.clone() * u;
            *s.at_mut(r, c) = updated;
        }
        *s.at_mut(r, t) = factor;
    }
}

/// `PA = LU` with `L` unit lower and `U` upper triangular, both n×n.
///
/// The pivot of each column is the first nonzero entry at or below the
/// diagonal (exact) or the largest one (float). A column that is zero below
/// the diagonal is skipped, leaving `e_t` in `L`.
pub fn lu_partial_pivot<T: Scalar>(a: &Matrix<T>) -> Result<PivotedFactorization<T>> {
    let n = require_square(a)?;
    let field = a.field();
    let mut s = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..n).collect();

    for t in 0..n {
        let zt = active_zero_test(&s, &all[t..], &all[t..], field);
        let Some((p, _)) = pick_pivot((t..n).map(|r| (r, t)), &s, &zt) else {
            for r in t..n {
                *s.at_mut(r, t) = T::zero();
            }
            continue;
        };
        swap_rows(&mut s, t, p);
        perm.swap(t, p);
        eliminate_packed(&mut s, t);
    }

    let lower = Matrix::build(n, n, |r, c| match r.cmp(&c) {
        core::cmp::Ordering::Greater => s.at(r, c).clone(),
        core::cmp::Ordering::Equal => T::one(),
        core::cmp::Ordering::Less => T::zero(),
    })
    .with_field(field);
    let upper = Matrix::build(n, n, |r, c| if r <= c { s.at(r, c).clone() } else { T::zero() })
        .with_field(field);
    let rank = rank(&upper);
    Ok(PivotedFactorization {
        row_perm: one_based(&perm),
        col_perm: (1..=n).collect(),
        lower,
        upper,
        rank,
        residual: Matrix::zeros(0, 0).with_field(field),
    })
}

/// `PAQ = LU` for any m×n `A`, rank revealing: `L` is m×r unit lower, `U` is
/// r×n upper, `r = rank(A)`.
///
/// Each step pivots on the first nonzero of the active block in row-major
/// order (exact) or its largest entry (float), and stops once the active
/// block is zero; that block is returned as `residual`.
pub fn lu_full_pivot<T: Scalar>(a: &Matrix<T>) -> PivotedFactorization<T> {
    let (m, n) = a.shape();
    let field = a.field();
    let mut s = a.clone();
    let mut row_perm: Vec<usize> = (0..m).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..n).collect();

    let mut r = 0;
    while r < m.min(n) {
        let zt = active_zero_test(&s, &rows[r..], &cols[r..], field);
        let candidates = (r..m).flat_map(|i| (r..n).map(move |j| (i, j)));
        let Some((pi, pj)) = pick_pivot(candidates, &s, &zt) else {
            break;
        };
        swap_rows(&mut s, r, pi);
        swap_cols(&mut s, r, pj);
        row_perm.swap(r, pi);
        col_perm.swap(r, pj);
        eliminate_packed(&mut s, r);
        r += 1;
    }

    let lower = Matrix::build(m, r, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Greater => s.at(i, j).clone(),
        core::cmp::Ordering::Equal => T::one(),
        core::cmp::Ordering::Less => T::zero(),
    })
    .with_field(field);
    let upper = Matrix::build(r, n, |i, j| if i <= j { s.at(i, j).clone() } else { T::zero() })
        .with_field(field);
    let residual = Matrix::build(m - r, n - r, |i, j| s.at(r + i, r + j).clone()).with_field(field);
    PivotedFactorization {
        row_perm: one_based(&row_perm),
        col_perm: one_based(&col_perm),
        lower,
        upper,
        rank: r,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn partial_pivot_swaps_antidiagonal() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let f = lu_partial_pivot(&a).unwrap();
        assert_eq!(f.row_perm, [2, 1]);
        assert_eq!(f.lower, Matrix::identity(2));
        assert_eq!(f.upper, Matrix::identity(2));
        assert_eq!(f.rank, 2);
    }

    #[test]
    fn partial_pivot_identity() {
        let i3 = Matrix::<Rational>::identity(3);
        let f = lu_partial_pivot(&i3).unwrap();
        assert_eq!(f.row_perm, [1, 2, 3]);
        assert_eq!(f.lower, i3);
        assert_eq!(f.upper, i3);
    }

    #[test]
    fn partial_pivot_with_zero_column() {
        let a = m(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 7]]);
        let f = lu_partial_pivot(&a).unwrap();
        assert_eq!(f.permuted(&a), f.lower.matmul(&f.upper).unwrap());
        assert_eq!(f.rank, 2);
    }

    #[test]
    fn full_pivot_zero_matrix() {
        let f = lu_full_pivot(&Matrix::<Rational>::zeros(2, 3));
        assert_eq!(f.rank, 0);
        assert_eq!(f.lower.shape(), (2, 0));
        assert_eq!(f.upper.shape(), (0, 3));
        assert!(f.residual.is_zero());
    }

    #[test]
    fn full_pivot_three_by_three() {
        let a = m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let f = lu_full_pivot(&a);
        assert_eq!(f.rank, 2);
        assert_eq!(f.permuted(&a), f.lower.matmul(&f.upper).unwrap());
        assert_eq!(f.residual, Matrix::zeros(1, 1));
    }

    #[test]
    fn full_pivot_float_prefers_large_entries() {
        let a = Matrix::from_rows(alloc::vec![alloc::vec![1.0, 2.0], alloc::vec![3.0, 8.0]]).unwrap();
        let f = lu_full_pivot(&a);
        assert_eq!(f.row_perm, [2, 1]);
        assert_eq!(f.col_perm, [2, 1]);
        assert_eq!(f.rank, 2);
    }
}
