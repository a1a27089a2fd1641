mod common;

use common::{m, oracle_nullity, oracle_rank, square};
use lu_general_core::certify::oracle::{basis_rank, minor_rank};
use lu_general_core::rank::{existence_report, nullity, rank, sylvester_nullity_check, Condition};
use lu_general_core::factor::{lu_unit_lower, lu_unit_upper};
use lu_general_core::{Error, Matrix, Rational, Scalar};
use proptest::prelude::*;

#[test]
fn rank_and_nullity_examples() {
    let trap = m(&[&[0, 1], &[1, 0]]);
    let example = m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    assert_eq!(rank(&trap), 2);
    assert_eq!(rank(&example), 2);
    assert_eq!(nullity(&m(&[&[0]])), 1);
    assert_eq!(nullity(&Matrix::<Rational>::identity(4)), 0);
    assert_eq!(nullity(&example), 1);

    let l = m(&[&[1, 0, 0], &[2, 1, 0], &[-1, 3, 1], &[0, 2, -2], &[1, 1, 1]]);
    let u = m(&[&[2, 1, 0, 3, 1], &[0, 1, -1, 2, 0], &[0, 0, 3, 1, 2]]);
    let five = l.matmul(&u).unwrap();
    assert_eq!(rank(&five), 3);
    assert_eq!(oracle_rank(&five), 3);
}

#[test]
fn existence_report_examples() {
    let r = existence_report(&m(&[&[0, 1], &[1, 0]])).unwrap();
    let k1 = r.per_k[0];
    assert_eq!((k1.null_principal, k1.null_col_block, k1.null_row_block), (1, 0, 0));
    assert!(!k1.general_ok);
    assert!(!r.general_exists);
    assert_eq!(r.witness(Condition::General), Some(1));

    let r = existence_report(&m(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
    assert!(r.general_exists);
    assert!(!r.unit_lower_exists);
    assert_eq!((r.per_k[1].null_principal, r.per_k[1].null_col_block), (2, 1));
    assert_eq!(r.witness(Condition::UnitLower), Some(2));

    let r = existence_report(&Matrix::<Rational>::identity(4)).unwrap();
    assert!(r.per_k.iter().all(|k| (k.null_principal, k.null_col_block, k.null_row_block) == (0, 0, 0)));
    assert!(r.general_exists && r.unit_lower_exists && r.unit_upper_exists);

    assert!(matches!(existence_report(&Matrix::<Rational>::zeros(2, 3)), Err(Error::NotSquare { .. })));
}

#[test]
fn sylvester_examples() {
    let i3 = Matrix::<Rational>::identity(3);
    assert!(sylvester_nullity_check(&i3, &i3).unwrap());
    let nil = m(&[&[0, 1], &[0, 0]]);
    assert!(sylvester_nullity_check(&nil, &nil).unwrap());
    assert!(sylvester_nullity_check(&i3, &nil).is_err());
}

fn report_nullities_match_oracle(a: &Matrix<Rational>) {
    let r = existence_report(a).unwrap();
    let n = a.rows();
    for rec in &r.per_k {
        let k = rec.k;
        assert_eq!(rec.null_principal, oracle_nullity(&a.leading(k).unwrap()));
        assert_eq!(rec.null_col_block, oracle_nullity(&a.column_block(1, k).unwrap()));
        assert_eq!(rec.null_row_block, oracle_nullity(&a.row_block(1, k).unwrap().transpose()));
    }
    assert_eq!(r.per_k.len(), n);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn elimination_rank_matches_minor_oracle(a in square(4, -2, 2)) {
        let expected = oracle_rank(&a);
        prop_assert_eq!(rank(&a), expected);
        prop_assert_eq!(minor_rank(&a), expected);
        prop_assert_eq!(basis_rank(&a), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sylvester_inequality_holds(b in square(4, -2, 2), c in square(4, -2, 2)) {
        prop_assume!(b.shape() == c.shape());
        prop_assert!(sylvester_nullity_check(&b, &c).unwrap());
        let bc = b.matmul(&c).unwrap();
        prop_assert!(oracle_nullity(&bc) <= oracle_nullity(&b) + oracle_nullity(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn report_agrees_with_minor_oracle(a in square(4, -2, 2)) {
        report_nullities_match_oracle(&a);
    }

    #[test]
    fn general_condition_is_transpose_symmetric(a in square(6, -2, 2)) {
        let r = existence_report(&a).unwrap();
        let rt = existence_report(&a.transpose()).unwrap();
        prop_assert_eq!(r.general_exists, rt.general_exists);
        prop_assert_eq!(r.unit_lower_exists, rt.unit_upper_exists);
        prop_assert_eq!(r.unit_upper_exists, rt.unit_lower_exists);
    }

    #[test]
    fn nonsingular_exists_iff_strongly_nonsingular(a in square(5, -2, 2)) {
        let n = a.rows();
        prop_assume!(rank(&a) == n);
        let strongly = (1..=n).all(|k| oracle_rank(&a.leading(k).unwrap()) == k);
        prop_assert_eq!(existence_report(&a).unwrap().general_exists, strongly);
    }

    #[test]
    fn both_unit_conditions_force_equal_nullities(a in square(5, -2, 2)) {
        let r = existence_report(&a).unwrap();
        if r.unit_lower_exists && r.unit_upper_exists {
            for rec in &r.per_k {
                prop_assert_eq!(rec.null_principal, rec.null_col_block);
                prop_assert_eq!(rec.null_principal, rec.null_row_block);
            }
        }
        // A single factorization with both factors unit triangular has det 1,
        // so singular input always leaves a zero on the other diagonal.
        if rank(&a) < a.rows() {
            if let Ok(f) = lu_unit_lower(&a) {
                prop_assert!((1..=a.rows()).any(|i| f.upper[(i, i)].is_exact_zero()));
            }
            if let Ok(f) = lu_unit_upper(&a) {
                prop_assert!((1..=a.rows()).any(|i| f.lower[(i, i)].is_exact_zero()));
            }
        }
    }
}
