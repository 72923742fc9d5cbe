//! Local analysis at x = 0: indicial polynomial, Frobenius bases with
//! logarithms, the residue matrix and the monodromy type.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ore::OreOperator;
use super::poly::{Poly, RatFunc};
use super::series::TruncatedSeries;
use crate::arith::{binomial, factorial, fmt_q, q, Q};
use crate::error::{Error, Result};

/// Indicial polynomial at 0 of the monic form.
pub fn indicial_polynomial(op: &OreOperator) -> Result<Poly> {
    Ok(op.monic()?.theta_decomposition(0)?.swap_remove(0))
}

/// x^λ · Σ_k log(x)^k · parts[k].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSolution {
    pub exponent: Q,
    pub parts: Vec<TruncatedSeries>,
}

impl FrobeniusSolution {
    pub fn plain(&self) -> &TruncatedSeries {
        &self.parts[0]
    }

    pub fn log_part(&self) -> Option<&TruncatedSeries> {
        self.parts.get(1)
    }

    pub fn log_degree(&self) -> usize {
        self.parts.len() - 1
    }
}

/// Jets in ε modulo ε^m, stored as polynomials.
fn jet_trunc(p: &Poly, m: usize) -> Poly {
    Poly::new(p.coeffs().iter().take(m).cloned().collect())
}

fn jet_inv(p: &Poly, m: usize) -> Option<Poly> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return None;
    }
    let mut out: Vec<Q> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = if k == 0 { Q::one() } else { Q::zero() };
        for j in 1..=k {
            acc -= p.coeff(j) * &out[k - j];
        }
        out.push(acc / &c0);
    }
    Some(Poly::new(out))
}

/// Coefficients c_n(λ₀ + ε) mod ε^m of φ_λ = Σ c_n(λ) x^{λ+n} solving
/// op[φ_λ] = d(λ)x^λ, where thetas come from the monic form.
fn frobenius_jets(thetas: &[Poly], lambda0: &Q, m: usize) -> Result<Vec<Poly>> {
    let n_max = thetas.len() - 1;
    let eps_shift = |p: &Poly, s: &Q| jet_trunc(&p.shift(s), m);
    let mut c: Vec<Poly> = vec![Poly::constant(Q::one())];
    for n in 1..=n_max {
        let mut acc = Poly::default();
        for k in 1..=n {
            if thetas[k].is_zero() || c[n - k].is_zero() {
                continue;
            }
            let t = eps_shift(&thetas[k], &(lambda0 + q((n - k) as i64)));
            acc = &acc + &jet_trunc(&(&t * &c[n - k]), m);
        }
        if acc.is_zero() {
            c.push(acc);
            continue;
        }
        let d = eps_shift(&thetas[0], &(lambda0 + q(n as i64)));
        let inv = jet_inv(&d, m).ok_or_else(|| Error::Resonance(format!("{} at step {n}", fmt_q(lambda0))))?;
        c.push(jet_trunc(&(&(-&acc) * &inv), m));
    }
    Ok(c)
}

/// Exponents of the monic form at 0 with multiplicities; errors unless all
/// are nonnegative integers.
fn integral_exponents(d: &Poly) -> Result<Vec<(Q, usize)>> {
    let (roots, rest) = d.rational_roots();
    if rest.degree().unwrap_or(0) > 0 || roots.iter().any(|(r, _)| !r.is_integer() || r < &Q::zero()) {
        return Err(Error::Invalid(format!("indicial roots are not all nonnegative integers: {}", d.to_string_in("l"))));
    }
    Ok(roots)
}

/// Applies a monic operator to x^λ Σ log^k f_k; returns the log-coefficients.
pub fn apply_to_solution(op: &OreOperator, sol: &FrobeniusSolution) -> Result<Vec<TruncatedSeries>> {
    let n = sol.parts[0].order();
    let coeffs = op.series_coeffs(n)?;
    let lam = &sol.exponent;
    let mut cur = sol.parts.clone();
    let mut out: Vec<TruncatedSeries> = cur.iter().map(|p| TruncatedSeries::zero(&p.var, n)).collect();
    for c in &coeffs {
        for (o, f) in out.iter_mut().zip(&cur) {
            *o = o.add(&c.mul(f));
        }
        // D(x^λ log^k f) = x^λ (log^k (λ+θ) f + k log^{k-1} f).
        let next: Vec<TruncatedSeries> = (0..cur.len())
            .map(|k| {
                let base = cur[k].theta().add(&cur[k].scale(lam));
                match cur.get(k + 1) {
                    Some(f) => base.add(&f.scale(&q((k + 1) as i64))),
                    None => base,
                }
            })
            .collect();
        cur = next;
    }
    Ok(out)
}

/// A basis of solutions at 0 built from φ_λ and its λ-derivatives.
pub fn frobenius_solutions(op: &OreOperator, order: usize) -> Result<Vec<FrobeniusSolution>> {
    let mono = op.monic()?;
    let thetas = mono.theta_decomposition(order)?;
    let var = op.var.clone();
    let mut out = Vec::new();
    for (lambda0, m) in integral_exponents(&thetas[0])? {
        let jets = frobenius_jets(&thetas, &lambda0, m)?;
        // f^{(i)} as a series: i!·[ε^i] c_n.
        let derivs: Vec<TruncatedSeries> = (0..m)
            .map(|i| {
                let fi = Q::from_integer(factorial(i as u64));
                TruncatedSeries::from_fn(&var, order, |n| jets[n].coeff(i) * &fi)
            })
            .collect();
        for j in 0..m {
            let parts = (0..=j).map(|k| derivs[j - k].scale(&Q::from_integer(binomial(j as u64, k as u64)))).collect();
            let sol = FrobeniusSolution { exponent: lambda0.clone(), parts };
            if apply_to_solution(&mono, &sol)?.iter().any(|r| !r.is_zero()) {
                return Err(Error::Invalid(format!("Frobenius solution at {} does not solve the equation", fmt_q(&lambda0))));
            }
            out.push(sol);
        }
    }
    Ok(out)
}

/// c_n(λ) as a rational function of λ.
pub fn frobenius_coefficient(op: &OreOperator, n: usize) -> Result<RatFunc> {
    let thetas = op.monic()?.theta_decomposition(n)?;
    let mut c: Vec<RatFunc> = vec![RatFunc::one()];
    for k in 1..=n {
        let mut acc = RatFunc::zero();
        for j in 1..=k {
            let t = RatFunc::poly(thetas[j].shift(&q((k - j) as i64)));
            acc = acc.add(&t.mul(&c[k - j]));
        }
        let d = RatFunc::poly(thetas[0].shift(&q(k as i64)));
        c.push(acc.neg().div(&d)?);
    }
    Ok(c.swap_remove(n))
}

/// Residue matrix of the first-order system at 0 and its spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyModel {
    pub matrix: Vec<Vec<Q>>,
    pub char_poly: Poly,
    pub eigenvalues: Vec<(Q, usize)>,
}

/// Characteristic polynomial det(λI − A) by Faddeev–LeVerrier.
pub fn char_poly(a: &[Vec<Q>]) -> Poly {
    let n = a.len();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / q(k as i64);
    }
    Poly::new(c)
}

pub fn companion_matrix(op: &OreOperator) -> Result<MonodromyModel> {
    let mono = op.monic()?;
    let n = mono.order().ok_or_else(|| Error::Invalid("zero operator".into()))?;
    let b = mono.theta_decomposition(0)?.swap_remove(0);
    let mut matrix = vec![vec![Q::zero(); n]; n];
    for (i, row) in matrix.iter_mut().enumerate().take(n.saturating_sub(1)) {
        row[i + 1] = Q::one();
    }
    for j in 0..n {
        matrix[n - 1][j] = -b.coeff(j);
    }
    let cp = char_poly(&matrix);
    let (eigenvalues, _) = cp.rational_roots();
    Ok(MonodromyModel { matrix, char_poly: cp, eigenvalues })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonodromyKind {
    #[serde(rename = "MUM")]
    Mum,
    #[serde(rename = "K")]
    KPoint,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for MonodromyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonodromyKind::Mum => "MUM",
            MonodromyKind::KPoint => "K",
            MonodromyKind::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: MonodromyKind,
    /// Indicial roots repeated by multiplicity.
    pub indicial: Vec<Q>,
    pub unipotent: bool,
    /// Jordan block sizes of N = log T, largest first.
    pub jordan: Vec<usize>,
}

/// Each exponent of multiplicity m carries a chain of solutions with
/// log-degrees 0..m−1, i.e. one Jordan block of size m for N.
pub fn monodromy_classification(op: &OreOperator) -> Result<Classification> {
    let d = indicial_polynomial(op)?;
    let n = d.degree().unwrap_or(0);
    let (roots, rest) = d.rational_roots();
    let indicial: Vec<Q> = roots.iter().flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m)).collect();
    if rest.degree().unwrap_or(0) > 0 || roots.iter().any(|(r, _)| !r.is_integer()) {
        return Ok(Classification { kind: MonodromyKind::Other, indicial, unipotent: false, jordan: Vec::new() });
    }
    let sols = frobenius_solutions(op, 12)?;
    let mut jordan: Vec<usize> = roots
        .iter()
        .map(|(r, _)| sols.iter().filter(|s| &s.exponent == r).map(|s| s.log_degree() + 1).max().unwrap_or(0))
        .collect();
    jordan.sort_unstable_by(|a, b| b.cmp(a));
    let kind = if jordan == [n] {
        MonodromyKind::Mum
    } else if n == 4 && jordan == [2, 2] {
        MonodromyKind::KPoint
    } else {
        MonodromyKind::Other
    };
    Ok(Classification { kind, indicial, unipotent: true, jordan })
}
