//! Exact revised simplex over the rationals.
//!
//! Problems are in standard form: minimize c·x subject to A x = b, x ≥ 0,
//! with A stored column-wise and sparse. Pricing uses Dantzig's rule and
//! falls back to Bland's rule during degenerate stretches, which keeps the
//! method finite.

use num_traits::{One, Signed, Zero};

use crate::arith::Q;

#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, Q)>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<Q>,
    pub objective: Q,
    /// Simplex multipliers y = c_B B⁻¹ for the rows of A.
    pub duals: Vec<Q>,
    /// For infeasible problems: y with yᵀA ≤ 0 and yᵀb > 0.
    pub farkas: Option<Vec<Q>>,
    pub pivots: usize,
}

impl Lp {
    pub fn new(rows: usize) -> Self {
        Lp { rows, cols: vec![], b: vec![Q::zero(); rows], c: vec![] }
    }

    pub fn add_column(&mut self, entries: Vec<(usize, Q)>, cost: Q) -> usize {
        self.cols.push(entries.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.c.push(cost);
        self.cols.len() - 1
    }
}

const DEGENERATE_LIMIT: usize = 40;

struct Tableau<'a> {
    lp: &'a Lp,
    m: usize,
    n: usize,
    flip: Vec<bool>,
    basis: Vec<usize>,
    binv: Vec<Vec<Q>>,
    xb: Vec<Q>,
    pivots: usize,
}

impl<'a> Tableau<'a> {
    /// Column j, where j ≥ n denotes the artificial for row j − n.
    fn column(&self, j: usize) -> Vec<(usize, Q)> {
        if j >= self.n {
            vec![(j - self.n, Q::one())]
        } else {
            self.lp.cols[j]
                .iter()
                .map(|(r, v)| (*r, if self.flip[*r] { -v.clone() } else { v.clone() }))
                .collect()
        }
    }

    fn multipliers(&self, cost: &dyn Fn(usize) -> Q) -> Vec<Q> {
        let mut y = vec![Q::zero(); self.m];
        for (r, &bv) in self.basis.iter().enumerate() {
            let cb = cost(bv);
            if cb.is_zero() {
                continue;
            }
            for (yi, bij) in y.iter_mut().zip(&self.binv[r]) {
                if !bij.is_zero() {
                    *yi += &cb * bij;
                }
            }
        }
        y
    }

    fn ftran(&self, col: &[(usize, Q)]) -> Vec<Q> {
        (0..self.m)
            .map(|i| col.iter().fold(Q::zero(), |s, (r, v)| if self.binv[i][*r].is_zero() { s } else { s + &self.binv[i][*r] * v }))
            .collect()
    }

    fn pivot(&mut self, r: usize, j: usize, alpha: &[Q]) {
        let piv = alpha[r].clone();
        let theta = &self.xb[r] / &piv;
        for i in 0..self.m {
            if i != r && !alpha[i].is_zero() {
                let t = &alpha[i] * &theta;
                self.xb[i] -= t;
            }
        }
        self.xb[r] = theta;
        let inv = piv.recip();
        for v in self.binv[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = self.binv[r].clone();
        for i in 0..self.m {
            if i == r || alpha[i].is_zero() {
                continue;
            }
            let f = alpha[i].clone();
            for (v, p) in self.binv[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = j;
        self.pivots += 1;
    }

    /// Runs simplex iterations; returns false when unbounded.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> Q, allowed: &dyn Fn(usize) -> bool) -> bool {
        let mut degenerate = 0usize;
        loop {
            let y = self.multipliers(cost);
            let in_basis = {
                let mut v = vec![false; self.n + self.m];
                for &b in &self.basis {
                    v[b] = true;
                }
                v
            };
            let bland = degenerate >= DEGENERATE_LIMIT;
            let mut entering: Option<(usize, Q)> = None;
            for j in 0..self.n + self.m {
                if in_basis[j] || !allowed(j) {
                    continue;
                }
                let col = self.column(j);
                let d = col.iter().fold(cost(j), |s, (r, v)| s - &y[*r] * v);
                if d.is_negative() {
                    match &entering {
                        None => {
                            entering = Some((j, d));
                            if bland {
                                break;
                            }
                        }
                        Some((_, best)) if d < *best => entering = Some((j, d)),
                        _ => {}
                    }
                }
            }
            let Some((j, _)) = entering else { return true };
            let alpha = self.ftran(&self.column(j));
            let mut leave: Option<(usize, Q)> = None;
            for r in 0..self.m {
                if alpha[r].is_positive() {
                    let ratio = &self.xb[r] / &alpha[r];
                    let better = match &leave {
                        None => true,
                        Some((lr, lt)) => ratio < *lt || (ratio == *lt && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, theta)) = leave else { return false };
            if theta.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, j, &alpha);
        }
    }
}

pub fn solve(lp: &Lp) -> LpSolution {
    let m = lp.rows;
    let n = lp.cols.len();
    let flip: Vec<bool> = lp.b.iter().map(Signed::is_negative).collect();
    let xb: Vec<Q> = lp.b.iter().map(|v| v.abs()).collect();
    let binv: Vec<Vec<Q>> =
        (0..m).map(|i| (0..m).map(|k| if i == k { Q::one() } else { Q::zero() }).collect()).collect();
    let mut t = Tableau { lp, m, n, flip, basis: (n..n + m).collect(), binv, xb, pivots: 0 };

    let phase1 = |j: usize| if j >= n { Q::one() } else { Q::zero() };
    t.optimize(&phase1, &|_| true);
    let infeas: Q = t.basis.iter().zip(&t.xb).filter(|(b, _)| **b >= n).map(|(_, v)| v.clone()).sum();
    if infeas.is_positive() {
        let y = t.multipliers(&phase1);
        let farkas: Vec<Q> = y.iter().zip(&t.flip).map(|(v, f)| if *f { -v.clone() } else { v.clone() }).collect();
        return LpSolution {
            status: LpStatus::Infeasible,
            x: vec![],
            objective: Q::zero(),
            duals: vec![],
            farkas: Some(farkas),
            pivots: t.pivots,
        };
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        let mut in_basis = vec![false; n];
        for &b in &t.basis {
            if b < n {
                in_basis[b] = true;
            }
        }
        let found = (0..n).filter(|&j| !in_basis[j]).find(|&j| {
            let col = t.column(j);
            let a_r = col.iter().fold(Q::zero(), |s, (k, v)| s + &t.binv[r][*k] * v);
            !a_r.is_zero()
        });
        if let Some(j) = found {
            let alpha = t.ftran(&t.column(j));
            t.pivot(r, j, &alpha);
        }
    }
    let phase2 = |j: usize| if j >= n { Q::zero() } else { lp.c[j].clone() };
    let bounded = t.optimize(&phase2, &|j| j < n);
    let mut x = vec![Q::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.xb[r].clone();
        }
    }
    let objective = x.iter().zip(&lp.c).fold(Q::zero(), |s, (a, b)| s + a * b);
    let y = t.multipliers(&phase2);
    let duals = y.iter().zip(&t.flip).map(|(v, f)| if *f { -v.clone() } else { v.clone() }).collect();
    LpSolution {
        status: if bounded { LpStatus::Optimal } else { LpStatus::Unbounded },
        x,
        objective,
        duals,
        farkas: None,
        pivots: t.pivots,
    }
}

/// Is `p` a convex combination of `points`?
pub fn in_convex_hull(points: &[Vec<Q>], p: &[Q]) -> bool {
    let d = p.len();
    let mut lp = Lp::new(d + 1);
    for (i, x) in p.iter().enumerate() {
        lp.b[i] = x.clone();
    }
    lp.b[d] = Q::one();
    for pt in points {
        let mut col: Vec<(usize, Q)> = pt.iter().cloned().enumerate().collect();
        col.push((d, Q::one()));
        lp.add_column(col, Q::zero());
    }
    solve(&lp).status == LpStatus::Optimal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr, to_q_vec};

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
        let mut lp = Lp::new(2);
        lp.b = vec![q(4), q(6)];
        lp.add_column(vec![(0, q(1)), (1, q(3))], q(-1));
        lp.add_column(vec![(0, q(2)), (1, q(1))], q(-1));
        lp.add_column(vec![(0, q(1))], q(0));
        lp.add_column(vec![(1, q(1))], q(0));
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, qr(-14, 5));
        assert_eq!(&s.x[..2], &[qr(8, 5), qr(6, 5)]);
        // Strong duality: y·b equals the optimum.
        assert_eq!(s.duals[0].clone() * q(4) + s.duals[1].clone() * q(6), qr(-14, 5));
    }

    #[test]
    fn infeasible_has_farkas_certificate() {
        // x + y = -1 with x, y ≥ 0.
        let mut lp = Lp::new(1);
        lp.b = vec![q(-1)];
        lp.add_column(vec![(0, q(1))], q(0));
        lp.add_column(vec![(0, q(1))], q(0));
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Infeasible);
        let y = s.farkas.unwrap();
        assert!(y[0].clone() * q(-1) > q(0));
        assert!(y[0] <= q(0));
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = Lp::new(1);
        lp.b = vec![q(1)];
        lp.add_column(vec![(0, q(1))], q(0));
        lp.add_column(vec![(0, q(-1))], q(-1));
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn hull_membership() {
        let sq: Vec<Vec<Q>> = [[0, 0], [2, 0], [0, 2], [2, 2]].iter().map(|p| to_q_vec(p)).collect();
        assert!(in_convex_hull(&sq, &[q(1), qr(3, 2)]));
        assert!(!in_convex_hull(&sq, &[q(3), q(1)]));
    }
}
