use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::oracle::certify_rank;

/// `P = X (YᵀX)⁻¹ Yᵀ`: the projection onto `range(X)` along the orthogonal
/// complement of `range(Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliqueProjector<T: Scalar> {
    pub x: Matrix<T>,
    pub y: Matrix<T>,
    pub p: Matrix<T>,
}

impl<T: Scalar> ObliqueProjector<T> {
    /// `Q_o = I - P`, the complementary projection onto `range(Y)^⊥` along
    /// `range(X)`.
    pub fn complement(&self) -> Matrix<T> {
        let n = self.p.rows();
        Matrix::identity(n)
            .with_field(self.p.field())
            .checked_sub(&self.p)
            .expect("P is square")
    }
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let zt = a.zero_test();
    let mut w = a.clone();
    let mut inv: Matrix<T> = Matrix::identity(n).with_field(a.field());
    for c in 0..n {
        let candidates = c..n;
        let p = if T::EXACT {
            candidates.clone().find(|&r| !w.at(r, c).is_exact_zero())
        } else {
            candidates
                .clone()
                .filter(|&r| !zt.is_zero(w.at(r, c)))
                .max_by(|&x, &y| w.at(x, c).magnitude().total_cmp(&w.at(y, c).magnitude()))
        }
        .ok_or(Error::Singular)?;
        if p != c {
            for k in 0..n {
                let (x, y) = (w.at(p, k).clone(), w.at(c, k).clone());
                *w.at_mut(p, k) = y;
                *w.at_mut(c, k) = x;
                let (x, y) = (inv.at(p, k).clone(), inv.at(c, k).clone());
                *inv.at_mut(p, k) = y;
                *inv.at_mut(c, k) = x;
            }
        }
        let pivot = w.at(c, c).clone();
        for k in 0..n {
            *w.at_mut(c, k) = w.at(c, k).clone() / pivot.clone();
            *inv.at_mut(c, k) = inv.at(c, k).clone() / pivot.clone();
        }
        for r in 0..n {
            if r == c || w.at(r, c).is_exact_zero() {
                continue;
            }
            let factor = w.at(r, c).clone();
            for k in 0..n {
                *w.at_mut(r, k) = w.at(r, k).clone() - factor.clone() * w.at(c, k).clone();
                *inv.at_mut(r, k) = inv.at(r, k).clone() - factor.clone() * inv.at(c, k).clone();
            }
        }
    }
    Ok(inv)
}

/// Builds the oblique projector for n×k `X` and `Y`. `X` must have full column
/// rank and `YᵀX` must be nonsingular.
pub fn oblique_projector<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> Result<ObliqueProjector<T>> {
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            op: "oblique_projector",
            left_rows: x.rows(),
            left_cols: x.cols(),
            right_rows: y.rows(),
            right_cols: y.cols(),
        });
    }
    let k = x.cols();
    let rank = certify_rank(x);
    if rank < k {
        return Err(Error::RankDeficient { rank, cols: k });
    }
    let yt = y.transpose();
    let gram_inv = inverse(&yt.matmul(x)?)?;
    let p = x.matmul(&gram_inv)?.matmul(&yt)?;
    Ok(ObliqueProjector {
        x: x.clone(),
        y: y.clone(),
        p,
    })
}

/// `S^o_k = Q_o(A[:,1:k-1]) · A[:,k:]` with `Q_o` projecting along the span of
/// the first `k-1` columns onto vectors whose first `k-1` entries vanish.
/// Rows `k..` of the result are the classical Schur complement after `k-1`
/// elimination steps. `k = 1` returns `A`.
///
/// Fails with [`Error::Singular`] when `A[1:k-1,1:k-1]` is singular.
pub fn schur_oblique_state<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    let (rows, cols) = a.shape();
    let done = k.saturating_sub(1);
    if k == 0 || done > rows.min(cols) {
        return Err(Error::Bounds {
            rows,
            cols,
            row_start: 1,
            row_end: done,
            col_start: 1,
            col_end: done,
        });
    }
    let trailing = a.column_block(k, cols)?;
    if done == 0 {
        return Ok(trailing);
    }
    if certify_rank(&a.leading(done)?) < done {
        return Err(Error::Singular);
    }
    let x = a.column_block(1, done)?;
    let y = Matrix::from_fn(rows, done, |i, j| if i == j { T::one() } else { T::zero() })
        .with_field(a.field());
    let projector = oblique_projector(&x, &y)?;
    projector.complement().matmul(&trailing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn coordinate_projection() {
        let i4 = Matrix::<Rational>::identity(4);
        let x = i4.column_block(1, 2).unwrap();
        let proj = oblique_projector(&x, &x).unwrap();
        let expected = Matrix::from_fn(4, 4, |i, j| {
            Rational::from_i64(i64::from(i == j && i <= 2))
        });
        assert_eq!(proj.p, expected);
    }

    #[test]
    fn errors() {
        let x = m(&[&[1, 2], &[2, 4], &[0, 0]]);
        let y = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert!(matches!(oblique_projector(&x, &y), Err(Error::RankDeficient { .. })));
        let x = m(&[&[0], &[1]]);
        let y = m(&[&[1], &[0]]);
        assert_eq!(oblique_projector(&x, &y).unwrap_err(), Error::Singular);
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(schur_oblique_state(&a, 2).unwrap_err(), Error::Singular);
    }

    #[test]
    fn first_state_is_the_matrix() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(schur_oblique_state(&a, 1).unwrap(), a);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inverse(&m(&[&[1, 2], &[2, 4]])).unwrap_err(), Error::Singular);
    }
}
