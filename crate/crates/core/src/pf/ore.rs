//! Operators Σ a_j(x)·D^j with D = x·d/dx and rational-function coefficients.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Poly, RatFunc};
use super::series::TruncatedSeries;
use crate::arith::{binomial, q, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreOperator {
    pub var: String,
    /// coeffs[j] multiplies D^j from the left.
    coeffs: Vec<RatFunc>,
}

impl OreOperator {
    pub fn new(var: &str, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        OreOperator { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn scalar(var: &str, c: RatFunc) -> Self {
        Self::new(var, vec![c])
    }

    pub fn one(var: &str) -> Self {
        Self::scalar(var, RatFunc::one())
    }

    pub fn d(var: &str) -> Self {
        Self::new(var, vec![RatFunc::zero(), RatFunc::one()])
    }

    /// Multiplication by the base variable.
    pub fn x(var: &str) -> Self {
        Self::scalar(var, RatFunc::poly(Poly::x()))
    }

    /// c·p(D).
    pub fn from_d_poly(var: &str, c: &RatFunc, p: &Poly) -> Self {
        Self::new(var, p.coeffs().iter().map(|a| c.scale(a)).collect())
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RatFunc {
        self.coeffs.get(j).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in D; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    fn same_var(&self, o: &Self) -> Result<()> {
        if self.var == o.var {
            Ok(())
        } else {
            Err(Error::Invalid(format!("operators in {} and {}", self.var, o.var)))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.var, (0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.var, (0..n).map(|j| self.coeff(j).sub(&o.coeff(j))).collect())
    }

    pub fn left_scale(&self, c: &RatFunc) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    /// Product in the Ore ring: D·b = b·D + θ(b).
    pub fn mul(&self, o: &Self) -> Self {
        let Some(oo) = o.order() else { return Self::zero(&self.var) };
        let Some(so) = self.order() else { return Self::zero(&self.var) };
        let mut out = vec![RatFunc::zero(); so + oo + 1];
        for (j, b) in o.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            // θ^k(b) for k ≤ so.
            let mut thetas = vec![b.clone()];
            for k in 1..=so {
                thetas.push(thetas[k - 1].theta());
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, tk) in thetas.iter().enumerate().take(i + 1) {
                    if tk.is_zero() {
                        continue;
                    }
                    let c = Q::from_integer(binomial(i as u64, k as u64));
                    let term = a.mul(tk).scale(&c);
                    out[i - k + j] = out[i - k + j].add(&term);
                }
            }
        }
        Self::new(&self.var, out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.var), |acc, _| acc.mul(self))
    }

    /// (quotient, remainder) with self = quotient·p + remainder and
    /// ord(remainder) < ord(p).
    pub fn right_divide(&self, p: &Self) -> Result<(Self, Self)> {
        self.same_var(p)?;
        let po = p.order().ok_or(Error::DivisionByZero)?;
        let plead = p.lead();
        let mut quo = Self::zero(&self.var);
        let mut rem = self.clone();
        while let Some(ro) = rem.order() {
            if ro < po {
                break;
            }
            let c = rem.lead().div(&plead)?;
            let mut coeffs = vec![RatFunc::zero(); ro - po + 1];
            coeffs[ro - po] = c;
            let t = Self::new(&self.var, coeffs);
            rem = rem.sub(&t.mul(p));
            quo = quo.add(&t);
            if rem.order() == Some(ro) {
                return Err(Error::Invalid("leading term failed to cancel".into()));
            }
        }
        Ok((quo, rem))
    }

    /// Left-normalized so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.lead();
        if lead.is_zero() {
            return Err(Error::Irregular("zero operator".into()));
        }
        Ok(self.left_scale(&RatFunc::one().div(&lead)?))
    }

    /// Coefficients as power series at 0, which must be holomorphic there.
    pub fn series_coeffs(&self, order: usize) -> Result<Vec<TruncatedSeries>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.pole_order_at_zero() > 0 {
                    return Err(Error::Irregular(format!("coefficient {} has a pole at 0", c.to_string_in(&self.var))));
                }
                TruncatedSeries::from_ratfunc(&self.var, c, order)
            })
            .collect()
    }

    /// Applies the operator to a series; exact through the series' order.
    pub fn apply(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        if s.var != self.var {
            return Err(Error::Invalid(format!("series in {} for an operator in {}", s.var, self.var)));
        }
        let n = s.order();
        let coeffs = self.series_coeffs(n)?;
        let mut out = TruncatedSeries::zero(&self.var, n);
        let mut dj = s.clone();
        for c in &coeffs {
            out = out.add(&c.mul(&dj));
            dj = dj.theta();
        }
        Ok(out)
    }

    /// θ_k(λ) with op = Σ_k x^k θ_k(D), for a monic operator with
    /// holomorphic coefficients; k ≤ order.
    pub fn theta_decomposition(&self, order: usize) -> Result<Vec<Poly>> {
        let coeffs = self.series_coeffs(order)?;
        Ok((0..=order).map(|k| Poly::new(coeffs.iter().map(|c| c.coeff(k)).collect())).collect())
    }

    pub fn to_string_d(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let coef = c.to_string_in(&self.var);
                match j {
                    0 => coef,
                    1 => format!("{coef}*D"),
                    _ => format!("{coef}*D^{j}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_d())
    }
}

/// Substitutes Q = −6D and ψ^{−6} = 3⁶z in an operator in ψ whose
/// coefficients are polynomials in ψ^{−6}.
pub fn psi_z_transport(op: &OreOperator) -> Result<OreOperator> {
    let c3 = q(729);
    let coeffs = op
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            // a = num/den with den = ψ^{6k}: rewrite as a polynomial in w = ψ^{-6}.
            let den = a.den();
            let k = den.degree().unwrap_or(0);
            if den != &Poly::monomial(Q::one(), k) || k % 6 != 0 {
                return Err(Error::Invalid("coefficient is not a polynomial in psi^-6".into()));
            }
            let mut w = vec![Q::zero(); k / 6 + 1];
            for (e, c) in a.num().coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if e > k || (k - e) % 6 != 0 {
                    return Err(Error::Invalid("coefficient is not a polynomial in psi^-6".into()));
                }
                w[(k - e) / 6] = c.clone();
            }
            let sign = q(-6).pow(j as i32);
            Ok(RatFunc::poly(Poly::new(w).dilate(&c3).scale(&sign)))
        })
        .collect::<Result<_>>()?;
    Ok(OreOperator::new("z", coeffs))
}

/// Inverse of [`psi_z_transport`]: D = −Q/6 and z = 3^{−6}ψ^{−6}.
pub fn z_psi_transport(op: &OreOperator) -> Result<OreOperator> {
    let inv = q(729).recip();
    let coeffs = op
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            if !a.is_polynomial() {
                return Err(Error::Invalid("coefficient is not polynomial in z".into()));
            }
            let p = a.num().scale(&a.den().lead().recip()).dilate(&inv);
            let k = 6 * p.degree().unwrap_or(0);
            // Σ p_i ψ^{-6i} = (Σ p_i ψ^{k-6i}) / ψ^k.
            let mut num = vec![Q::zero(); k + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                num[k - 6 * i] = c.clone();
            }
            let sign = q(-6).pow(-(j as i32));
            RatFunc::new(Poly::new(num).scale(&sign), Poly::monomial(Q::one(), k))
        })
        .collect::<Result<_>>()?;
    Ok(OreOperator::new("psi", coeffs))
}
