mod common;

use common::{m, ri, square};
use lu_general_core::certify::{inverse, oblique_projector, schur_oblique_state};
use lu_general_core::matgen::{gen, gen_rectangular, Family, GenSpec};
use lu_general_core::rank::rank;
use lu_general_core::{Error, Matrix, Rational};
use proptest::prelude::*;

#[test]
fn coordinate_subspace_gives_diagonal_projector() {
    for n in 2..=5 {
        for k in 1..=n {
            let x = Matrix::<Rational>::identity(n).column_block(1, k).unwrap();
            let p = oblique_projector(&x, &x).unwrap().p;
            let expected = Matrix::from_fn(n, n, |i, j| ri(i64::from(i == j && i <= k)));
            assert_eq!(p, expected);
        }
    }
}

#[test]
fn nonsingular_top_block_formula() {
    let x = m(&[&[2, 1], &[1, 1], &[3, -1], &[0, 4]]);
    let y = Matrix::<Rational>::identity(4).column_block(1, 2).unwrap();
    let p = oblique_projector(&x, &y).unwrap().p;
    let top_inv = inverse(&x.row_block(1, 2).unwrap()).unwrap();
    assert_eq!(p, x.matmul(&top_inv).unwrap().matmul(&y.transpose()).unwrap());
}

#[test]
fn dependent_column_is_zeroed() {
    let a = m(&[&[2, 1, 3, 0], &[1, 3, 4, 1], &[0, 1, 1, 5], &[4, -1, 3, 2]]);
    let s = schur_oblique_state(&a, 3).unwrap();
    assert!(s.column_block(1, 1).unwrap().is_zero());
    assert!(!s.column_block(2, 2).unwrap().is_zero());
}

#[test]
fn refuses_singular_leading_block() {
    let a = m(&[&[1, 2, 0], &[2, 4, 1], &[0, 1, 1]]);
    assert_eq!(schur_oblique_state(&a, 3).unwrap_err(), Error::Singular);
}

/// `A22 - A21 A11^{-1} A12` with `A11` the leading (k-1) block.
fn direct_schur(a: &Matrix<Rational>, k: usize) -> Matrix<Rational> {
    let n = a.rows();
    let a11 = a.leading(k - 1).unwrap();
    let a12 = a.submatrix(1, k - 1, k, n).unwrap();
    let a21 = a.submatrix(k, n, 1, k - 1).unwrap();
    let a22 = a.submatrix(k, n, k, n).unwrap();
    let correction = a21.matmul(&inverse(&a11).unwrap()).unwrap().matmul(&a12).unwrap();
    a22.checked_sub(&correction).unwrap()
}

#[test]
fn bottom_block_is_the_schur_complement() {
    for seed in 0..30 {
        let a = gen(&GenSpec { n: 4, rank: 4, seed, entry_bound: 3, family: Family::ProductLU }).unwrap().matrix;
        for k in 2..=4 {
            let s = schur_oblique_state(&a, k).unwrap();
            assert_eq!(s.row_block(k, 4).unwrap(), direct_schur(&a, k), "seed {seed} k {k}");
        }
    }
}

fn full_rank_pair() -> impl Strategy<Value = (Matrix<Rational>, Matrix<Rational>)> {
    (2usize..=5, any::<u64>()).prop_flat_map(|(n, seed)| {
        (1..=n).prop_map(move |k| {
            let x = gen_rectangular(n, k, k, seed, 3).unwrap();
            let y = gen_rectangular(n, k, k, seed ^ 0x5eed, 3).unwrap();
            (x, y)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn projector_identities((x, y) in full_rank_pair()) {
        let proj = match oblique_projector(&x, &y) {
            Ok(p) => p,
            Err(Error::Singular) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let p = &proj.p;
        let q = proj.complement();
        let n = x.rows();
        prop_assert_eq!(p.matmul(p).unwrap(), p.clone());
        prop_assert_eq!(p.matmul(&x).unwrap(), x.clone());
        prop_assert!(q.matmul(&x).unwrap().is_zero());
        // Columns of `ortho` span the vectors with Yᵀv = 0.
        let yt = y.transpose();
        let ortho = Matrix::<Rational>::identity(n).checked_sub(&y.matmul(&inverse(&yt.matmul(&y).unwrap()).unwrap()).unwrap().matmul(&yt).unwrap()).unwrap();
        prop_assert!(yt.matmul(&ortho).unwrap().is_zero());
        prop_assert!(p.matmul(&ortho).unwrap().is_zero());
        prop_assert_eq!(q.matmul(&ortho).unwrap(), ortho);
    }

    #[test]
    fn dependent_columns_vanish(a in square(5, -2, 2), k in 2usize..=5, seed in any::<u64>()) {
        let n = a.rows();
        prop_assume!(k <= n);
        let lead = a.leading(k - 1).unwrap();
        prop_assume!(rank(&lead) == k - 1);
        // Overwrite the trailing columns with combinations of the first k-1.
        let coeffs = gen_rectangular(k - 1, n - k + 1, (k - 1).min(n - k + 1), seed, 2).unwrap();
        let combo = a.column_block(1, k - 1).unwrap().matmul(&coeffs).unwrap();
        let b = Matrix::from_fn(n, n, |i, j| if j < k { a[(i, j)].clone() } else { combo[(i, j - k + 1)].clone() });
        let s = schur_oblique_state(&b, k).unwrap();
        prop_assert!(s.is_zero());
    }
}
