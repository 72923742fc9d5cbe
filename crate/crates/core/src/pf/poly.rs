//! Dense univariate polynomials and rational functions over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_q, q, Q, Z};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// c·x^k.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// x − r.
    pub fn linear_root(r: Q) -> Self {
        Self::new(vec![-r, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Q::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * q(k as i64)).collect())
    }

    /// p(x + c).
    pub fn shift(&self, c: &Q) -> Self {
        let step = Self::new(vec![c.clone(), Q::one()]);
        self.0.iter().rev().fold(Self::default(), |acc, a| &(&acc * &step) + &Self::constant(a.clone()))
    }

    /// p(c·x).
    pub fn dilate(&self, c: &Q) -> Self {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// p(x^k).
    pub fn inflate(&self, k: usize) -> Self {
        let mut out = vec![Q::zero(); (self.0.len().max(1) - 1) * k + 1];
        for (i, a) in self.0.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() { self.clone() } else { self.scale(&self.lead().recip()) }
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().recip();
        let mut r = self.0.clone();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") * &inv;
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            quo[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok((Poly::new(quo), Poly::new(r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots with multiplicities, in increasing order, and the
    /// cofactor left without rational roots.
    pub fn rational_roots(&self) -> (Vec<(Q, usize)>, Poly) {
        let mut p = self.clone();
        let mut roots: Vec<(Q, usize)> = Vec::new();
        if p.is_zero() {
            return (roots, p);
        }
        let mut zero_mult = 0;
        while p.coeff(0).is_zero() {
            p = Poly::new(p.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Q::zero(), zero_mult));
        }
        // Integer primitive form.
        let l = p.0.iter().fold(Z::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<Z> = p.0.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let candidates = |n: &Z| -> Vec<Z> {
            let n = n.abs();
            let mut out = Vec::new();
            let mut k = Z::one();
            while &k * &k <= n {
                if (&n % &k).is_zero() {
                    out.push(k.clone());
                    out.push(&n / &k);
                }
                k += 1;
            }
            out
        };
        let (a0, an) = (ints[0].clone(), ints.last().expect("nonzero").clone());
        let mut cands: Vec<Q> = Vec::new();
        for num in candidates(&a0) {
            for den in candidates(&an) {
                let r = Q::new(num.clone(), den);
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let lin = Poly::linear_root(r.clone());
            let mut m = 0;
            while p.degree().unwrap_or(0) > 0 && p.eval(&r).is_zero() {
                p = p.div_rem(&lin).expect("nonzero").0;
                m += 1;
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
        roots.sort();
        (roots, p)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (out.is_empty(), c.is_negative()) {
                (true, true) => out.push('-'),
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
                (true, false) => {}
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => out.push_str(&fmt_q(&mag)),
                (_, true) => out.push_str(&power),
                (_, false) => out.push_str(&format!("{}*{power}", fmt_q(&mag))),
            }
        }
        if out.is_empty() { "0".into() } else { out }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

/// num/den in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_rem(&g)?.0, den.div_rem(&g)?.0);
        let l = d.lead();
        n = n.scale(&l.recip());
        d = d.scale(&l.recip());
        Ok(RatFunc { num: n, den: d })
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::constant(Q::one()) }
    }

    pub fn constant(c: Q) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::poly(Poly::default())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero den")
    }

    /// θf = x·f′.
    pub fn theta(&self) -> RatFunc {
        let d = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(&Poly::x() * &d, &self.den * &self.den).expect("nonzero den")
    }

    /// f(x + c).
    pub fn shift(&self, c: &Q) -> RatFunc {
        RatFunc::new(self.num.shift(c), self.den.shift(c)).expect("nonzero den")
    }

    /// Value at x, or `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() { None } else { Some(self.num.eval(x) / d) }
    }

    /// Order of the pole at 0 (0 when holomorphic there).
    pub fn pole_order_at_zero(&self) -> usize {
        self.den.coeffs().iter().take_while(|c| c.is_zero()).count()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_polynomial() {
            let p = self.num.scale(&self.den.lead().recip());
            format!("({})", p.to_string_in(var))
        } else {
            format!("({})/({})", self.num.to_string_in(var), self.den.to_string_in(var))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use proptest::prelude::*;

    #[test]
    fn display_signs() {
        assert_eq!(Poly::from_ints(&[0, 0, 4, -4, 1]).to_string_in("lambda"), "lambda^4 - 4*lambda^3 + 4*lambda^2");
        assert_eq!(Poly::from_ints(&[-1, 0, 3]).to_string_in("x"), "3*x^2 - 1");
        assert_eq!(Poly::from_ints(&[]).to_string_in("x"), "0");
    }

    #[test]
    fn roots_with_multiplicity() {
        // λ²(λ−2)²
        let d = &Poly::from_ints(&[0, 0, 1]) * &Poly::from_ints(&[-2, 1]).pow(2);
        let (roots, rest) = d.rational_roots();
        assert_eq!(roots, vec![(q(0), 2), (q(2), 2)]);
        assert_eq!(rest.degree(), Some(0));
        let p = &Poly::from_ints(&[1, 3]) * &Poly::from_ints(&[1, 0, 1]);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(qr(-1, 3), 1)]);
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn rational_function_reduction() {
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[2, 2])).unwrap();
        assert_eq!(f.num(), &Poly::new(vec![qr(-1, 2), qr(1, 2)]));
        assert!(f.is_polynomial());
        assert_eq!(RatFunc::poly(Poly::from_ints(&[0, 0, 3])).theta(), RatFunc::poly(Poly::from_ints(&[0, 0, 6])));
    }

    proptest! {
        #[test]
        fn division_identity(a in proptest::collection::vec(-9i64..9, 1..7), b in proptest::collection::vec(-9i64..9, 1..4)) {
            let (a, b) = (Poly::from_ints(&a), Poly::from_ints(&b));
            prop_assume!(!b.is_zero());
            let (quo, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&quo * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn shift_matches_evaluation(a in proptest::collection::vec(-9i64..9, 1..6), c in -5i64..5, x in -5i64..5) {
            let p = Poly::from_ints(&a);
            prop_assert_eq!(p.shift(&q(c)).eval(&q(x)), p.eval(&q(x + c)));
        }
    }
}
