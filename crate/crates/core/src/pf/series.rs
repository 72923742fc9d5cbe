use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Poly, RatFunc};
use crate::arith::{fmt_q, q, Q};
use crate::error::{Error, Result};

/// Σ_{n≤N} c_n xⁿ, exact modulo x^{N+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub var: String,
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn new(var: &str, mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order + 1, Q::zero());
        TruncatedSeries { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::new(var, Vec::new(), order)
    }

    pub fn from_fn(var: &str, order: usize, f: impl Fn(usize) -> Q) -> Self {
        Self::new(var, (0..=order).map(f).collect(), order)
    }

    pub fn from_poly(var: &str, p: &Poly, order: usize) -> Self {
        Self::from_fn(var, order, |k| p.coeff(k))
    }

    /// Expansion at 0 of a rational function without a pole there.
    pub fn from_ratfunc(var: &str, f: &RatFunc, order: usize) -> Result<Self> {
        let num = Self::from_poly(var, f.num(), order);
        let den = Self::from_poly(var, f.den(), order);
        num.div(&den)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.var, o.var, "series in different variables");
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.var, self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.order().min(o.order());
        Self::from_fn(&self.var, n, |k| &self.coeffs[k] + &o.coeffs[k])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x * c).collect(), self.order())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.order().min(o.order());
        let mut out = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(&self.var, out, n)
    }

    pub fn div(&self, den: &Self) -> Result<Self> {
        self.check(den);
        let c0 = den.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order().min(den.order());
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &den.coeffs[j] * &out[k - j];
            }
            out.push(acc / &c0);
        }
        Ok(Self::new(&self.var, out, n))
    }

    /// x·d/dx.
    pub fn theta(&self) -> Self {
        Self::from_fn(&self.var, self.order(), |k| &self.coeffs[k] * q(k as i64))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_q(c),
                1 => format!("{}*{}", fmt_q(c), self.var),
                _ => format!("{}*{}^{k}", fmt_q(c), self.var),
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "{body} + O({}^{})", self.var, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one = TruncatedSeries::from_poly("z", &Poly::from_ints(&[1]), 10);
        let den = TruncatedSeries::from_poly("z", &Poly::from_ints(&[1, -1]), 10);
        let g = one.div(&den).unwrap();
        assert!(g.coeffs().iter().all(|c| *c == q(1)));
        assert_eq!(g.theta().coeff(7), q(7));
        assert_eq!(g.mul(&den), one);
    }
}
