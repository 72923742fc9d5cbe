//! The holomorphic period at the MUM point and the Yukawa coupling.

use num_traits::{One, Zero};

use super::ore::OreOperator;
use super::series::TruncatedSeries;
use crate::arith::{factorial, q, qr, Q, Z};

/// ((3n)!)²/(n!)⁶.
pub fn period_coefficient(n: u64) -> Z {
    let a = factorial(3 * n);
    let b = factorial(n);
    let b3 = &b * &b * &b;
    (&a * &a) / (&b3 * &b3)
}

/// Φ₀ = Σ c_n zⁿ through zᴺ.
pub fn period_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn("z", order, |n| Q::from_integer(period_coefficient(n as u64)))
}

/// c_{n+1}/c_n = 3⁶(n+1/3)²(n+2/3)²/(n+1)⁴.
pub fn recursion_ratio(n: u64) -> Q {
    let n = q(n as i64);
    let a = &n + qr(1, 3);
    let b = &n + qr(2, 3);
    let c = &n + Q::one();
    q(729) * &a * &a * &b * &b / (&c * &c * &c * &c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub ok: bool,
    /// (n, c_{n+1} − ratio(n)·c_n) wherever nonzero.
    pub residuals: Vec<(usize, Q)>,
    /// Coefficients of L[Φ] that do not vanish.
    pub series_residual: Vec<usize>,
}

/// Checks the two-term recursion and L[Φ] = 0 through order N for the
/// coefficients produced by `coeff`.
pub fn annihilation_check(op: &OreOperator, coeff: impl Fn(usize) -> Q, order: usize) -> AnnihilationReport {
    let c: Vec<Q> = (0..=order + 1).map(coeff).collect();
    let residuals: Vec<(usize, Q)> = (0..=order)
        .map(|n| (n, &c[n + 1] - recursion_ratio(n as u64) * &c[n]))
        .filter(|(_, r)| !r.is_zero())
        .collect();
    let s = TruncatedSeries::new(&op.var, c[..=order].to_vec(), order);
    let series_residual = match op.apply(&s) {
        Ok(r) => (0..=order).filter(|&n| !r.coeff(n).is_zero()).collect(),
        Err(_) => vec![0],
    };
    AnnihilationReport { ok: residuals.is_empty() && series_residual.is_empty(), residuals, series_residual }
}

fn one_minus(base: &Q, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn("z", order, |n| match n {
        0 => Q::one(),
        1 => -base.clone(),
        _ => Q::zero(),
    })
}

/// Y = C/(1 − 3⁶z) against D Y = (b·z/(1 − b·z))·Y through order N.
pub fn yukawa_check_with(base: &Q, scale: &Q, order: usize) -> bool {
    let c = TruncatedSeries::from_fn("z", order, |n| if n == 0 { scale.clone() } else { Q::zero() });
    let bz = TruncatedSeries::from_fn("z", order, |n| if n == 1 { base.clone() } else { Q::zero() });
    let (Ok(y), Ok(factor)) = (c.div(&one_minus(&q(729), order)), bz.div(&one_minus(base, order))) else {
        return false;
    };
    y.theta() == factor.mul(&y)
}

pub fn yukawa_check(order: usize) -> bool {
    yukawa_check_with(&q(729), &Q::one(), order)
}
