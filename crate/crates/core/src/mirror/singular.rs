//! Exact smoothness and node certificates for the torus part of the fibers
//! t₁+t₂+t₃ = 3ψ, t₄+t₅+t₆ = 3ψ, t₁⋯t₆ = 1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{Cyc, CycJson};
use crate::arith::{fmt_q, qr};
use crate::error::{Error, Result};

/// Row-reduces in place over ℚ(ζ₆) and returns the rank.
fn eliminate(m: &mut [Vec<Cyc>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn rank_cyc(m: &[Vec<Cyc>]) -> usize {
    eliminate(&mut m.to_vec())
}

pub fn det_cyc(m: &[Vec<Cyc>]) -> Cyc {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = Cyc::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Cyc::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    det
}

/// Values of the three defining equations at (ψ, t).
pub fn fiber_residuals(psi: &Cyc, t: &[Cyc; 6]) -> [Cyc; 3] {
    let three_psi = &Cyc::int(3) * psi;
    let s1 = &(&(&t[0] + &t[1]) + &t[2]) - &three_psi;
    let s2 = &(&(&t[3] + &t[4]) + &t[5]) - &three_psi;
    let prod = t.iter().fold(Cyc::one(), |acc, x| &acc * x);
    [s1, s2, prod - Cyc::one()]
}

/// Rank of the Jacobian of the defining equations at an exact fiber point.
pub fn torus_jacobian_rank(psi: &Cyc, t: &[Cyc; 6]) -> Result<usize> {
    let res = fiber_residuals(psi, t);
    if res.iter().any(|r| !r.is_zero()) {
        return Err(Error::OffFiber { residuals: res.iter().map(ToString::to_string).collect() });
    }
    let row = |mask: [i64; 6]| mask.iter().map(|&k| Cyc::int(k)).collect::<Vec<_>>();
    let grad: Vec<Cyc> = (0..6)
        .map(|i| (0..6).filter(|&j| j != i).fold(Cyc::one(), |acc, j| &acc * &t[j]))
        .collect();
    Ok(rank_cyc(&[row([1, 1, 1, 0, 0, 0]), row([0, 0, 0, 1, 1, 1]), grad]))
}

/// The fiber point t = (a, b, c, b, c, a) with a = 1/(bc), which lies over
/// ψ = (a + b + c)/3. Two free parameters, no square roots.
pub fn fiber_point(b: &Cyc, c: &Cyc) -> Result<(Cyc, [Cyc; 6])> {
    let a = (b * c).inv()?;
    let psi = &(&(&a + b) + c) * &Cyc::rational(qr(1, 3));
    Ok((psi, [a.clone(), b.clone(), c.clone(), b.clone(), c.clone(), a]))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RankJson {
    pub psi: CycJson,
    pub rank: usize,
}

pub fn rank_json(psi: &Cyc, rank: usize) -> RankJson {
    RankJson { psi: psi.to_json(), rank }
}

/// Symmetric Gram matrix B of x ↦ xᵀBx.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: Vec<Vec<Cyc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuadraticFormJson {
    pub gram: Vec<Vec<String>>,
    pub det: String,
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<Cyc>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) || (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::Invalid("Gram matrix must be square and symmetric".into()));
        }
        Ok(QuadraticForm { gram })
    }

    pub fn from_rational(rows: &[&[(i64, i64)]]) -> Self {
        let gram = rows.iter().map(|r| r.iter().map(|&(n, d)| Cyc::rational(qr(n, d))).collect()).collect();
        QuadraticForm::new(gram).expect("symmetric")
    }

    pub fn det(&self) -> Cyc {
        det_cyc(&self.gram)
    }

    pub fn scale(&self, c: &Cyc) -> Self {
        QuadraticForm { gram: self.gram.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    /// Gram of r₁² + r₂² + r₄² + r₅² + (r₁ + r₂)² in the variables (r₁, r₂, r₄, r₅).
    pub fn printed_node_form() -> Self {
        Self::from_rational(&[
            &[(2, 1), (1, 1), (0, 1), (0, 1)],
            &[(1, 1), (2, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
        ])
    }

    pub fn to_json(&self) -> QuadraticFormJson {
        let fmt = |c: &Cyc| if c.is_rational() { fmt_q(&c.a) } else { c.to_string() };
        QuadraticFormJson {
            gram: self.gram.iter().map(|r| r.iter().map(fmt).collect()).collect(),
            det: fmt(&self.det()),
        }
    }
}

/// Truncated power series in four variables, total degree ≤ 2.
#[derive(Clone, Debug, PartialEq)]
struct Series(BTreeMap<[u8; 4], Cyc>);

const ORDER: u8 = 2;

impl Series {
    fn constant(c: Cyc) -> Self {
        Series(BTreeMap::from([([0; 4], c)]))
    }

    /// c + Σ coeffs[i]·r_i.
    fn linear(c: Cyc, coeffs: [i64; 4]) -> Self {
        let mut s = Self::constant(c);
        for (i, &k) in coeffs.iter().enumerate() {
            if k != 0 {
                let mut e = [0; 4];
                e[i] = 1;
                s.0.insert(e, Cyc::int(k));
            }
        }
        s
    }

    fn get(&self, e: &[u8; 4]) -> Cyc {
        self.0.get(e).cloned().unwrap_or_else(Cyc::zero)
    }

    fn mul(&self, o: &Series) -> Series {
        let mut out: BTreeMap<[u8; 4], Cyc> = BTreeMap::new();
        for (ea, a) in &self.0 {
            for (eb, b) in &o.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                if e.iter().sum::<u8>() <= ORDER {
                    let t = out.remove(&e).unwrap_or_else(Cyc::zero) + a * b;
                    out.insert(e, t);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Series(out)
    }

    fn sub(&self, o: &Series) -> Series {
        let mut out = self.0.clone();
        for (e, c) in &o.0 {
            let t = out.remove(e).unwrap_or_else(Cyc::zero) - c.clone();
            out.insert(*e, t);
        }
        out.retain(|_, c| !c.is_zero());
        Series(out)
    }

    /// num/den, solved degree by degree from den·x = num.
    fn div(num: &Series, den: &Series) -> Result<Series> {
        let c0 = den.get(&[0; 4]).inv()?;
        let mut exps: Vec<[u8; 4]> = all_exponents();
        exps.sort_by_key(|e| e.iter().sum::<u8>());
        let mut x: BTreeMap<[u8; 4], Cyc> = BTreeMap::new();
        for e in exps {
            let mut acc = num.get(&e);
            for (d, dc) in &den.0 {
                if *d == [0; 4] || (0..4).any(|i| d[i] > e[i]) {
                    continue;
                }
                let rest = [e[0] - d[0], e[1] - d[1], e[2] - d[2], e[3] - d[3]];
                if let Some(xc) = x.get(&rest) {
                    acc = acc - dc * xc;
                }
            }
            x.insert(e, &acc * &c0);
        }
        x.retain(|_, c| !c.is_zero());
        Ok(Series(x))
    }
}

fn all_exponents() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..=ORDER {
        for b in 0..=ORDER - a {
            for c in 0..=ORDER - a - b {
                for d in 0..=ORDER - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Quadratic part of the eliminated fiber relation at (ψ,…,ψ), divided by
/// ψ⁵, as a form in (r₁, r₂, r₄, r₅) with r_i = t_i − ψ.
///
/// t₃ = 3ψ − t₁ − t₂ comes from the first sum, t₆ = 1/(t₁⋯t₅) from the
/// product, leaving ψ − r₄ − r₅ − 1/(t₁t₂t₃t₄t₅) = 0.
pub fn odp_certificate(psi: &Cyc) -> Result<QuadraticForm> {
    if psi.pow(6) != Cyc::one() {
        return Err(Error::NotRootOfUnity);
    }
    // Variables (r₁, r₂, r₄, r₅).
    let factors = [
        Series::linear(psi.clone(), [1, 0, 0, 0]),
        Series::linear(psi.clone(), [0, 1, 0, 0]),
        Series::linear(psi.clone(), [-1, -1, 0, 0]),
        Series::linear(psi.clone(), [0, 0, 1, 0]),
        Series::linear(psi.clone(), [0, 0, 0, 1]),
    ];
    let prod = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.mul(f));
    let t6 = Series::div(&Series::constant(Cyc::one()), &prod)?;
    let f = Series::linear(psi.clone(), [0, 0, -1, -1]).sub(&t6);

    for e in all_exponents().iter().filter(|e| e.iter().sum::<u8>() < 2) {
        if !f.get(e).is_zero() {
            return Err(Error::Invalid(format!("relation has a nonzero term of degree < 2 at {e:?}")));
        }
    }
    let norm = psi.pow(5).inv()?;
    let half = Cyc::rational(qr(1, 2));
    let mut gram = vec![vec![Cyc::zero(); 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let mut e = [0u8; 4];
            e[i] += 1;
            e[j] += 1;
            let c = &f.get(&e) * &norm;
            if i == j {
                gram[i][i] = c;
            } else {
                let h = &c * &half;
                gram[i][j] = h.clone();
                gram[j][i] = h;
            }
        }
    }
    let form = QuadraticForm::new(gram)?;
    if form.det().is_zero() {
        return Err(Error::Invalid("Hessian is degenerate".into()));
    }
    Ok(form)
}

/// Whether a computed node form agrees with the printed one.
pub fn matches_printed_form(form: &QuadraticForm) -> bool {
    *form == QuadraticForm::printed_node_form()
}
