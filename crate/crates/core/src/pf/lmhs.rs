//! Hodge–Deligne diamonds of a weight-3 limit mixed Hodge structure.

use std::fmt;

use serde::{Deserialize, Serialize};

/// h[p][q] for 0 ≤ p, q ≤ 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HodgeDeligneDiamond {
    pub h: [[usize; 4]; 4],
}

impl HodgeDeligneDiamond {
    /// dim Gr^W_w = Σ_{p+q=w} h^{p,q}.
    pub fn weight(&self, w: usize) -> usize {
        (0..4).filter(|&p| w >= p && w - p < 4).map(|p| self.h[p][w - p]).sum()
    }

    /// dim Gr_F^p = Σ_q h^{p,q}.
    pub fn f_dim(&self, p: usize) -> usize {
        self.h[p].iter().sum()
    }

    pub fn total(&self) -> usize {
        self.h.iter().flatten().sum()
    }

    /// Rank of N when N² = 0: the rank of N: Gr₄ → Gr₂ plus Gr₅ → Gr₁ and Gr₆ → Gr₀.
    pub fn rank_n(&self) -> usize {
        (4..=6).map(|w| self.weight(w)).sum()
    }

    /// The diamond as seven rows, top weight first.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..=6).rev().map(|w| (0..4).rev().filter(|&p| w >= p && w - p < 4).map(|p| self.h[p][w - p]).collect()).collect()
    }
}

impl fmt::Display for HodgeDeligneDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let pad = " ".repeat(2 * (4 - row.len()));
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{pad}{}", cells.join("   "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LmhsConstraint {
    /// Gr^W_w = 0 for these weights.
    VanishingWeights(Vec<usize>),
    /// dim Gr_F^p for p = 0..3.
    FDims([usize; 4]),
    /// h^{p,q} = h^{q,p}.
    Symmetric,
    /// N: Gr_{3+k} → Gr_{3−k} is an isomorphism.
    NIso(usize),
    RankN(usize),
}

impl LmhsConstraint {
    pub fn holds(&self, d: &HodgeDeligneDiamond) -> bool {
        match self {
            LmhsConstraint::VanishingWeights(ws) => ws.iter().all(|&w| d.weight(w) == 0),
            LmhsConstraint::FDims(f) => (0..4).all(|p| d.f_dim(p) == f[p]),
            LmhsConstraint::Symmetric => (0..4).all(|p| (0..4).all(|q| d.h[p][q] == d.h[q][p])),
            LmhsConstraint::NIso(k) => *k <= 3 && d.weight(3 + k) == d.weight(3 - k),
            LmhsConstraint::RankN(r) => d.rank_n() == *r,
        }
    }
}

/// Constraints derived for the point ψ = 0: N² = 0 kills weights 0, 1, 5, 6;
/// each Gr_F^p is a line; the diamond is symmetric and N: Gr₄ ≅ Gr₂.
pub fn k_point_constraints() -> Vec<LmhsConstraint> {
    vec![
        LmhsConstraint::VanishingWeights(vec![0, 1, 5, 6]),
        LmhsConstraint::FDims([1; 4]),
        LmhsConstraint::Symmetric,
        LmhsConstraint::NIso(1),
    ]
}

fn compositions(total: usize, cells: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cells == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, cells - 1, prefix, out);
        prefix.pop();
    }
}

/// Every diamond of the given total dimension satisfying all constraints,
/// in lexicographic order.
pub fn lmhs_enumeration(total_dim: usize, constraints: &[LmhsConstraint]) -> Vec<HodgeDeligneDiamond> {
    let mut all = Vec::new();
    compositions(total_dim, 16, &mut Vec::with_capacity(16), &mut all);
    let mut out: Vec<HodgeDeligneDiamond> = all
        .into_iter()
        .map(|v| {
            let mut h = [[0; 4]; 4];
            for (i, x) in v.into_iter().enumerate() {
                h[i / 4][i % 4] = x;
            }
            HodgeDeligneDiamond { h }
        })
        .filter(|d| constraints.iter().all(|c| c.holds(d)))
        .collect();
    out.sort();
    out
}

/// Diamond with ones at the listed (p, q).
pub fn diamond_with(ones: &[(usize, usize)]) -> HodgeDeligneDiamond {
    let mut h = [[0; 4]; 4];
    for &(p, q) in ones {
        h[p][q] = 1;
    }
    HodgeDeligneDiamond { h }
}

/// The three diamonds allowed at ψ = 0, rhombus first.
pub fn k_point_candidates() -> [HodgeDeligneDiamond; 3] {
    [
        diamond_with(&[(3, 1), (1, 3), (2, 0), (0, 2)]),
        diamond_with(&[(3, 0), (0, 3), (2, 2), (1, 1)]),
        diamond_with(&[(3, 0), (2, 1), (1, 2), (0, 3)]),
    ]
}
