mod common;

use common::{m, rect};
use lu_general_core::{Error, Matrix, Rational};
use proptest::prelude::*;

#[test]
fn submatrix_examples() {
    let i3 = Matrix::<Rational>::identity(3);
    assert_eq!(i3.submatrix(1, 2, 1, 2).unwrap(), Matrix::identity(2));
    let a = m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    assert_eq!(a.submatrix(2, 3, 2, 3).unwrap(), m(&[&[0, 1], &[1, 0]]));
    let empty = a.submatrix(2, 1, 1, 3).unwrap();
    assert_eq!(empty.shape(), (0, 3));
    assert!(matches!(a.submatrix(1, 4, 1, 1), Err(Error::Bounds { .. })));
}

#[test]
fn transpose_and_matmul_examples() {
    assert_eq!(m(&[&[1, 2], &[3, 4]]).transpose(), m(&[&[1, 3], &[2, 4]]));
    assert_eq!(Matrix::<Rational>::zeros(0, 3).transpose().shape(), (3, 0));
    let l = m(&[&[0, 0], &[1, 0], &[0, 1]]);
    let u = m(&[&[0, 0, 1], &[0, 1, 0]]);
    assert_eq!(l.matmul(&u).unwrap(), m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
    let empty = Matrix::<Rational>::zeros(3, 0).matmul(&Matrix::zeros(0, 3)).unwrap();
    assert_eq!(empty, Matrix::zeros(3, 3));
    assert!(matches!(l.matmul(&l), Err(Error::DimensionMismatch { .. })));
}

fn nested_ranges() -> impl Strategy<Value = (Matrix<Rational>, [usize; 8])> {
    rect(5, -3, 3).prop_flat_map(|a| {
        let (r, c) = a.shape();
        (Just(a), 1..=r.max(1), 1..=c.max(1)).prop_flat_map(move |(a, i, k)| {
            let (r, c) = a.shape();
            (Just(a), Just(i), i..=r.max(i), Just(k), k..=c.max(k)).prop_flat_map(
                |(a, i, j, k, l)| {
                    let (h, w) = (j - i + 1, l - k + 1);
                    (Just(a), 1..=h, 1..=w).prop_flat_map(move |(a, i2, k2)| {
                        (Just(a), i2..=h, k2..=w).prop_map(move |(a, j2, l2)| {
                            (a, [i, j, k, l, i2, j2, k2, l2])
                        })
                    })
                },
            )
        })
    })
}

proptest! {
    #[test]
    fn slicing_composes((a, [i, j, k, l, i2, j2, k2, l2]) in nested_ranges()) {
        prop_assume!(a.rows() > 0 && a.cols() > 0);
        let outer = a.submatrix(i, j, k, l).unwrap();
        let inner = outer.submatrix(i2, j2, k2, l2).unwrap();
        let direct = a.submatrix(i + i2 - 1, i + j2 - 1, k + k2 - 1, k + l2 - 1).unwrap();
        prop_assert_eq!(inner, direct);
    }

    #[test]
    fn transpose_is_an_involution(a in rect(5, -3, 3)) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        for i in 1..=a.rows() {
            for j in 1..=a.cols() {
                prop_assert_eq!(&a.transpose()[(j, i)], &a[(i, j)]);
            }
        }
    }

    #[test]
    fn rational_algebra_is_exact(
        a in proptest::collection::vec(-9i64..=9, 9),
        b in proptest::collection::vec(-9i64..=9, 9),
        c in proptest::collection::vec(1i64..=9, 9),
    ) {
        let frac = |p: &[i64], q: &[i64]| {
            Matrix::from_vec(3, 3, p.iter().zip(q).map(|(&p, &q)| Rational::new(p.into(), q.into())).collect()).unwrap()
        };
        let x = frac(&a, &c);
        let y = frac(&b, &c);
        let z = frac(&c, &[7; 9]);
        prop_assert_eq!(x.matmul(&y).unwrap().matmul(&z).unwrap(), x.matmul(&y.matmul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.matmul(&y.checked_add(&z).unwrap()).unwrap(),
            x.matmul(&y).unwrap().checked_add(&x.matmul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.matmul(&y).unwrap().transpose(), y.transpose().matmul(&x.transpose()).unwrap());
        prop_assert_eq!(x.checked_sub(&x).unwrap(), Matrix::zeros(3, 3));
        prop_assert_eq!(Matrix::identity(3).matmul(&x).unwrap(), x);
    }
}
