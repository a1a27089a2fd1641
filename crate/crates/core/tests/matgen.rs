mod common;

use common::oracle_rank;
use lu_general_core::factor::{lu_general, lu_unit_lower};
use lu_general_core::matgen::{gen, Family, GenSpec};
use lu_general_core::rank::{existence_report, Condition};
use lu_general_core::Error;

fn spec(family: Family, n: usize, rank: usize, seed: u64) -> GenSpec {
    GenSpec { n, rank, seed, entry_bound: 3, family }
}

#[test]
fn product_lu_has_requested_rank_and_factors() {
    for seed in 0..40 {
        let n = 1 + seed as usize % 4;
        let r = seed as usize % (n + 1);
        let a = gen(&spec(Family::ProductLU, n, r, seed)).unwrap().matrix;
        assert_eq!(oracle_rank(&a), r);
        assert!(lu_general(&a).is_ok());
    }
}

#[test]
fn traps_fail_at_recorded_witness() {
    for seed in 0..60 {
        let n = 2 + seed as usize % 5;
        let g = gen(&spec(Family::AntiDiagonalTrap, n, n, seed)).unwrap();
        let k = g.witness_k.expect("trap records a witness");
        assert_eq!(existence_report(&g.matrix).unwrap().witness(Condition::General), Some(k));
        assert_eq!(lu_general(&g.matrix).unwrap_err(), Error::NotFactorizable { witness_k: k });
    }
}

#[test]
fn unit_lower_feasible_is_feasible() {
    for seed in 0..40 {
        let n = 1 + seed as usize % 6;
        let a = gen(&spec(Family::UnitLowerFeasible, n, seed as usize % (n + 1), seed)).unwrap().matrix;
        assert!(lu_unit_lower(&a).is_ok(), "{a}");
    }
}

#[test]
fn generation_is_deterministic() {
    for family in Family::ALL {
        for seed in [0, 1, u64::MAX] {
            let s = spec(family, 5, 3, seed);
            assert_eq!(gen(&s).unwrap(), gen(&s).unwrap());
        }
    }
    let a = gen(&spec(Family::Random, 5, 5, 1)).unwrap();
    let b = gen(&spec(Family::Random, 5, 5, 2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(matches!(gen(&spec(Family::ProductLU, 2, 3, 0)), Err(Error::InvalidSpec(_))));
    let mut s = spec(Family::ProductLU, 2, 2, 0);
    s.entry_bound = 0;
    assert!(matches!(gen(&s), Err(Error::InvalidSpec(_))));
}
