//! ℚ(ζ₆) as ℚ[x]/(x² − x + 1).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};

/// a + b·ζ₆.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc {
    pub a: Q,
    pub b: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycJson {
    pub a: String,
    pub b: String,
}

impl Cyc {
    pub fn new(a: Q, b: Q) -> Self {
        Cyc { a, b }
    }

    pub fn rational(a: Q) -> Self {
        Cyc { a, b: Q::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Q::from_integer(n.into()))
    }

    pub fn zeta() -> Self {
        Cyc { a: Q::zero(), b: Q::one() }
    }

    /// The sixth roots of unity 1, ζ, …, ζ⁵.
    pub fn mu6() -> Vec<Cyc> {
        (0..6).map(|k| Self::zeta().pow(k)).collect()
    }

    pub fn conj(&self) -> Self {
        // ζ̄ = 1 − ζ.
        Cyc { a: &self.a + &self.b, b: -self.b.clone() }
    }

    pub fn norm(&self) -> Q {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Cyc { a: c.a / &n, b: c.b / n })
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("nonzero base").pow(-k);
        }
        (0..k).fold(Self::int(1), |acc, _| &acc * self)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Parses "a", "a*z6", "a+b*z6", "z6", "-z6" with rational a, b.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        let mut out = Self::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            let at_split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/');
            if at_split {
                out = out + Self::parse_term(&s[start..i])?;
                start = i;
            }
        }
        Ok(out)
    }

    fn parse_term(t: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed cyclotomic term {t:?}"));
        let (sign, body) = match t.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let sign = Q::from_integer(sign.into());
        if let Some(coef) = body.strip_suffix("z6") {
            let c = match coef {
                "" => Q::one(),
                c => parse_q(c.strip_suffix('*').ok_or_else(bad)?).map_err(|_| bad())?,
            };
            Ok(Cyc { a: Q::zero(), b: sign * c })
        } else {
            Ok(Cyc::rational(sign * parse_q(body).map_err(|_| bad())?))
        }
    }

    pub fn to_json(&self) -> CycJson {
        CycJson { a: fmt_q(&self.a), b: fmt_q(&self.b) }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.a)),
            (true, false) => write!(f, "{}*z6", fmt_q(&self.b)),
            (false, false) => {
                let sign = if self.b < Q::zero() { "" } else { "+" };
                write!(f, "{}{}{}*z6", fmt_q(&self.a), sign, fmt_q(&self.b))
            }
        }
    }
}

impl Zero for Cyc {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Cyc {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        Cyc { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        Cyc { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        Cyc { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, o: &Cyc) -> Cyc {
        Cyc { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { a: -self.a, b: -self.b }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        // ζ² = ζ − 1.
        let bd = &self.b * &o.b;
        Cyc { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a + bd }
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        &self * &o
    }
}

impl Div for Cyc {
    type Output = Cyc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Cyc) -> Cyc {
        &self * &o.inv().expect("division by zero in Q(z6)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use proptest::prelude::*;

    #[test]
    fn sixth_root_relations() {
        let z = Cyc::zeta();
        assert_eq!(z.pow(6), Cyc::one());
        assert_eq!(z.pow(2), &z - &Cyc::one());
        assert_ne!(z.pow(3), Cyc::one());
        assert_eq!(Cyc::mu6().len(), 6);
    }

    #[test]
    fn literals() {
        assert_eq!(Cyc::parse("1/2+3/4*z6").unwrap(), Cyc::new(qr(1, 2), qr(3, 4)));
        assert_eq!(Cyc::parse("-z6").unwrap(), -Cyc::zeta());
        assert_eq!(Cyc::parse("2-1/3*z6").unwrap(), Cyc::new(qr(2, 1), qr(-1, 3)));
        assert_eq!(Cyc::parse("-1/2").unwrap(), Cyc::rational(qr(-1, 2)));
        assert!(Cyc::parse("1+*z6").is_err());
        assert!(Cyc::parse("abc").is_err());
        let x = Cyc::new(qr(-3, 7), qr(5, 2));
        assert_eq!(Cyc::parse(&x.to_string()).unwrap(), x);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in 1i64..9, d in -20i64..20) {
            let x = Cyc::new(qr(a, c), qr(b, 1));
            let y = Cyc::new(qr(d, 1), qr(a, c));
            prop_assert_eq!(&(&x * &y) * &Cyc::zeta(), &x * &(&y * &Cyc::zeta()));
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Cyc::one());
            }
        }
    }
}
