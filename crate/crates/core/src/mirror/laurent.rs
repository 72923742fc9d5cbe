use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::cyclotomic::Cyc;

/// Polynomial in the family parameter ψ with coefficients in ℚ(ζ₆).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PsiPoly(Vec<Cyc>);

impl PsiPoly {
    pub fn constant(c: Cyc) -> Self {
        PsiPoly(vec![c]).trimmed()
    }

    /// c·ψ^k.
    pub fn monomial(c: Cyc, k: usize) -> Self {
        let mut v = vec![Cyc::zero(); k + 1];
        v[k] = c;
        PsiPoly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Cyc] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, o: &PsiPoly) -> PsiPoly {
        let n = self.0.len().max(o.0.len());
        let get = |v: &[Cyc], i: usize| v.get(i).cloned().unwrap_or_else(Cyc::zero);
        PsiPoly((0..n).map(|i| get(&self.0, i) + get(&o.0, i)).collect()).trimmed()
    }

    pub fn eval(&self, psi: &Cyc) -> Cyc {
        self.0.iter().rev().fold(Cyc::zero(), |acc, c| &(&acc * psi) + c)
    }
}

impl fmt::Display for PsiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*psi"),
                _ => format!("({c})*psi^{k}"),
            })
            .collect();
        if parts.is_empty() { write!(f, "0") } else { write!(f, "{}", parts.join("+")) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variables {
    /// Cox variables, one per named ray.
    Cox(Vec<String>),
    /// Torus characters t₁..t₆ subject to t₁⋯t₆ = 1.
    Torus,
}

impl Variables {
    pub fn len(&self) -> usize {
        match self {
            Variables::Cox(v) => v.len(),
            Variables::Torus => 6,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, i: usize) -> String {
        match self {
            Variables::Cox(v) => v[i].clone(),
            Variables::Torus => format!("t{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Variables,
    terms: BTreeMap<Vec<i64>, PsiPoly>,
}

impl LaurentPolynomial {
    pub fn zero(vars: Variables) -> Self {
        LaurentPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    /// Torus exponents are reduced modulo the diagonal to the representative
    /// with smallest entry 0.
    fn normalize(&self, mut exp: Vec<i64>) -> Vec<i64> {
        assert_eq!(exp.len(), self.vars.len(), "exponent length");
        if self.vars == Variables::Torus {
            let m = *exp.iter().min().expect("six exponents");
            exp.iter_mut().for_each(|e| *e -= m);
        }
        exp
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: PsiPoly) {
        let exp = self.normalize(exp);
        let sum = self.terms.get(&exp).map_or(c.clone(), |old| old.add(&c));
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn with_term(mut self, exp: Vec<i64>, c: PsiPoly) -> Self {
        self.add_term(exp, c);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &PsiPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> Option<&PsiPoly> {
        self.terms.get(&self.normalize(exp.to_vec()))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        (0..self.vars.len()).find(|&i| self.vars.name(i) == name)
    }

    /// Every monomial has positive degree in variable `i`.
    pub fn divisible_by(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] > 0)
    }

    pub fn specialize(&self, psi: &Cyc) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), PsiPoly::constant(c.eval(psi)));
        }
        out
    }

    /// Keeps only the given variables, setting the others to 1.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let names = keep.iter().map(|&i| self.vars.name(i)).collect();
        let mut out = Self::zero(Variables::Cox(names));
        for (e, c) in &self.terms {
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<(&Vec<i64>, &PsiPoly)> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| (e.iter().sum::<i64>(), std::cmp::Reverse(e.to_vec())));
        let mut parts = Vec::new();
        for (e, c) in order {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { self.vars.name(i) } else { format!("{}^{k}", self.vars.name(i)) })
                .collect();
            let coef = if c.is_constant() && c.coeffs()[0] == Cyc::one() { String::new() } else { format!("{c}") };
            parts.push(match (coef.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono.join("*"),
                (false, true) => coef,
                (false, false) => format!("{coef}*{}", mono.join("*")),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_exponents_mod_diagonal() {
        let one = PsiPoly::constant(Cyc::one());
        let p = LaurentPolynomial::zero(Variables::Torus)
            .with_term(vec![1; 6], one.clone())
            .with_term(vec![0; 6], one.clone());
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&[0; 6]), Some(&PsiPoly::constant(Cyc::int(2))));
        let q = LaurentPolynomial::zero(Variables::Torus).with_term(vec![0, 0, 0, 0, 0, -1], one);
        assert_eq!(q.terms().next().unwrap().0, &vec![1, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn cancellation_and_specialization() {
        let vars = Variables::Cox(vec!["x".into(), "y".into()]);
        let mut p = LaurentPolynomial::zero(vars)
            .with_term(vec![1, 0], PsiPoly::monomial(Cyc::int(3), 1))
            .with_term(vec![0, 1], PsiPoly::constant(Cyc::int(-1)));
        assert_eq!(p.specialize(&Cyc::zero()).len(), 1);
        p.add_term(vec![0, 1], PsiPoly::constant(Cyc::int(1)));
        assert_eq!(p.len(), 1);
        assert!(p.divisible_by(0));
    }
}
