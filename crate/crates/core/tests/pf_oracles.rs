use nefmirror::arith::{binomial, q, qr, Q, Z};
use nefmirror::pf::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn rat(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(poly(num), poly(den)).unwrap()
}

#[test]
fn period_coefficients_match_multinomial_count() {
    // Constant term of (t1+t2+t3)^{3n}(t4+t5+t6)^{3n}/(t1⋯t6)^n.
    for n in 0..=12u64 {
        let per_factor = binomial(3 * n, n) * binomial(2 * n, n);
        assert_eq!(period_coefficient(n), &per_factor * &per_factor, "n = {n}");
    }
    assert_eq!(period_coefficient(1), Z::from(36));
    assert_eq!(period_coefficient(2), Z::from(8100));
}

#[test]
fn recursion_agrees_with_factorials() {
    let mut c = Q::one();
    for n in 0..200u64 {
        assert_eq!(c, Q::from_integer(period_coefficient(n)));
        c *= nefmirror::pf::period::recursion_ratio(n);
    }
}

#[test]
fn l_annihilates_the_period() {
    let l = operator_l();
    assert!(l.apply(&period_series(50)).unwrap().is_zero());
    let rep = annihilation_check(&l, |n| Q::from_integer(period_coefficient(n as u64)), 50);
    assert!(rep.ok);
    let bad = annihilation_check(&l, |n| if n == 1 { q(37) } else { Q::from_integer(period_coefficient(n as u64)) }, 50);
    assert!(!bad.ok);
    assert!(bad.residuals.iter().any(|(n, _)| *n == 1));
    assert_eq!(bad.series_residual.first(), Some(&1));
}

#[test]
fn operator_division() {
    let l = operator_l();
    let (quo, rem) = l.right_divide(&l).unwrap();
    assert_eq!(quo, OreOperator::one("z"));
    assert!(rem.is_zero());
    let d = OreOperator::d("z");
    let (quo, rem) = l.right_divide(&d).unwrap();
    assert_eq!(quo.order(), Some(3));
    assert_eq!(rem.order(), Some(0));
    assert_eq!(quo.mul(&d).add(&rem), l);
    assert!(l.right_divide(&OreOperator::zero("z")).is_err());
}

fn small_operator(coeffs: Vec<Vec<i64>>) -> OreOperator {
    OreOperator::new("x", coeffs.iter().map(|c| RatFunc::poly(poly(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn right_division_recombines(
        a in proptest::collection::vec(proptest::collection::vec(-4i64..4, 1..3), 1..4),
        b in proptest::collection::vec(proptest::collection::vec(-4i64..4, 1..3), 1..3),
    ) {
        let (a, b) = (small_operator(a), small_operator(b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.right_divide(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.order().is_none_or(|r| r < b.order().unwrap()));
    }
}

#[test]
fn indicial_polynomials() {
    let lam = Poly::x();
    let l2 = Poly::from_ints(&[-2, 1]);
    assert_eq!(indicial_polynomial(&operator_r()).unwrap(), &lam.pow(2) * &l2.pow(2));
    assert_eq!(indicial_polynomial(&operator_l()).unwrap(), lam.pow(4));
}

#[test]
fn r_expands_to_the_printed_monic_form() {
    let r = operator_r();
    // The Q⁴ coefficient of R itself is −1.
    assert_eq!(r.lead(), RatFunc::constant(q(-1)));
    let m = r.monic().unwrap();
    let one_minus = [1, 0, 0, 0, 0, 0, -1];
    assert_eq!(m.coeff(4), RatFunc::one());
    assert_eq!(m.coeff(3), rat(&[-4, 0, 0, 0, 0, 0, -8], &one_minus));
    assert_eq!(m.coeff(2), rat(&[4, 0, 0, 0, 0, 0, -24], &one_minus));
    assert_eq!(m.coeff(1), rat(&[0, 0, 0, 0, 0, 0, -32], &one_minus));
    assert_eq!(m.coeff(0), rat(&[0, 0, 0, 0, 0, 0, -16], &one_minus));
    // Q²(Q−2)² − ψ⁶(12Q³+20Q²+32Q+16) − ψ¹²(…) + …
    let th = m.theta_decomposition(12).unwrap();
    let tail = Poly::from_ints(&[-16, -32, -20, -12]);
    assert_eq!(th[0], Poly::from_ints(&[0, 0, 4, -4, 1]));
    assert_eq!(th[6], tail);
    assert_eq!(th[12], tail);
    assert!((1..6).all(|k| th[k].is_zero()));
}

#[test]
fn frobenius_basis_of_r() {
    let r = operator_r();
    let c6 = frobenius_coefficient(&r, 6).unwrap();
    let num = Poly::from_ints(&[16, 32, 20, 12]);
    let den = &Poly::from_ints(&[6, 1]).pow(2) * &Poly::from_ints(&[4, 1]).pow(2);
    assert_eq!(c6, RatFunc::new(num, den).unwrap());
    assert!(frobenius_coefficient(&r, 3).unwrap().is_zero());

    let sols = frobenius_solutions(&r, 36).unwrap();
    assert_eq!(sols.len(), 4);
    let a0 = &sols[0];
    assert_eq!(a0.exponent, q(0));
    assert_eq!(a0.plain().coeff(0), q(1));
    assert_eq!(a0.plain().coeff(6), qr(1, 36));
    assert_eq!(sols.iter().filter(|s| s.log_part().is_some_and(|l| !l.is_zero())).count(), 2);
    for s in sols.iter().filter(|s| s.log_degree() == 1) {
        let partner = sols.iter().find(|t| t.exponent == s.exponent && t.log_degree() == 0).unwrap();
        assert_eq!(s.log_part().unwrap(), partner.plain());
    }
    let exps: Vec<Q> = sols.iter().map(|s| s.exponent.clone()).collect();
    assert_eq!(exps, vec![q(0), q(0), q(2), q(2)]);
}

#[test]
fn frobenius_basis_of_l_has_a_log_cubed() {
    let sols = frobenius_solutions(&operator_l(), 20).unwrap();
    assert_eq!(sols.iter().map(|s| s.log_degree()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    assert_eq!(sols[0].plain(), &period_series(20));
}

#[test]
fn residue_matrices() {
    let m = companion_matrix(&operator_r()).unwrap();
    assert_eq!(m.matrix[3], vec![q(0), q(0), q(-4), q(4)]);
    assert_eq!(m.matrix[0], vec![q(0), q(1), q(0), q(0)]);
    assert_eq!(m.eigenvalues, vec![(q(0), 2), (q(2), 2)]);
    let ml = companion_matrix(&operator_l()).unwrap();
    assert_eq!(ml.eigenvalues, vec![(q(0), 4)]);
    assert!(ml.matrix[3].iter().all(Zero::is_zero));
    for op in [operator_l(), operator_r(), OreOperator::d("x").pow(2)] {
        let (roots, _) = indicial_polynomial(&op).unwrap().rational_roots();
        assert_eq!(companion_matrix(&op).unwrap().eigenvalues, roots);
    }
}

#[test]
fn monodromy_types() {
    let l = monodromy_classification(&operator_l()).unwrap();
    assert_eq!((l.kind, l.jordan.clone()), (MonodromyKind::Mum, vec![4]));
    let r = monodromy_classification(&operator_r()).unwrap();
    assert_eq!((r.kind, r.jordan.clone()), (MonodromyKind::KPoint, vec![2, 2]));
    assert_eq!(r.indicial, vec![q(0), q(0), q(2), q(2)]);
    let half = OreOperator::d("x").sub(&OreOperator::scalar("x", RatFunc::constant(qr(1, 2))));
    assert_eq!(monodromy_classification(&half).unwrap().kind, MonodromyKind::Other);
}

#[test]
fn psi_and_z_forms_of_l_agree() {
    let lz = psi_z_transport(&operator_l_psi()).unwrap();
    assert_eq!(lz, operator_l());
    assert_eq!(z_psi_transport(&operator_l()).unwrap(), operator_l_psi());
}

fn printed_diamonds() -> Vec<HodgeDeligneDiamond> {
    let mut v = k_point_candidates().to_vec();
    v.sort();
    v
}

#[test]
fn three_diamonds_remain() {
    let found = lmhs_enumeration(4, &k_point_constraints());
    assert_eq!(found, printed_diamonds());
    let mut with_rank = k_point_constraints();
    with_rank.push(LmhsConstraint::RankN(2));
    assert_eq!(lmhs_enumeration(4, &with_rank), vec![diamond_with(&[(3, 1), (1, 3), (2, 0), (0, 2)])]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        with_rank.shuffle(&mut rng);
        assert_eq!(lmhs_enumeration(4, &with_rank).len(), 1);
    }
    let rows = diamond_with(&[(3, 1), (1, 3), (2, 0), (0, 2)]).rows();
    assert_eq!(rows[2], vec![1, 0, 1]);
    assert_eq!(rows[4], vec![1, 0, 1]);
}

#[test]
fn yukawa() {
    assert!(yukawa_check(20));
    assert!(!nefmirror::pf::period::yukawa_check_with(&q(243), &Q::one(), 20));
}
