use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::dd::cone_generators;
use super::vector::{LatticeSpace, LatticeVector};
use crate::arith::{column_echelon, det_i64, integer_kernel, kernel_q, primitive, rank_i64, solve_q, to_q_vec, z_to_i64, Q, Z};
use crate::error::{Error, Result};

/// A rational polyhedral cone with primitive, irredundant generators,
/// sorted by intrinsic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    space: LatticeSpace,
    rays: Vec<LatticeVector>,
}

fn zrows(v: &[Vec<i64>]) -> Vec<Vec<Z>> {
    v.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()
}

/// Generators of {m : ⟨x, m⟩ ≥ 0 for all x in the cone of `gens`}, as
/// intrinsic coordinates; lineality directions appear with both signs.
fn dual_generators(gens: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if gens.is_empty() {
        let mut out = Vec::new();
        for i in 0..n {
            for s in [1, -1] {
                let mut e = vec![0; n];
                e[i] = s;
                out.push(e);
            }
        }
        return out;
    }
    let g = cone_generators(&zrows(gens), n);
    let mut out: Vec<Vec<i64>> = g.rays.iter().map(|r| z_to_i64(r).expect("small dual generator")).collect();
    for l in &g.lineality {
        let l = z_to_i64(l).expect("small lineality generator");
        out.push(l.iter().map(|x| -x).collect());
        out.push(l);
    }
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// Cone spanned by `gens`; generators are made primitive, deduplicated,
    /// and (for pointed cones) reduced to the extreme rays.
    pub fn new(space: LatticeSpace, gens: &[LatticeVector]) -> Result<Cone> {
        let mut prim: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            if g.space() != space {
                return Err(Error::Space(format!("generator {g} is not in {}", space.label())));
            }
            if !g.is_zero() {
                prim.push(primitive(&g.intrinsic()));
            }
        }
        prim.sort();
        prim.dedup();
        let n = space.rank();
        if rank_i64(&prim) < prim.len() {
            let dual = dual_generators(&prim, n);
            if rank_i64(&dual) == n {
                let extreme: BTreeSet<Vec<i64>> = cone_generators(&zrows(&dual), n)
                    .rays
                    .iter()
                    .map(|r| z_to_i64(r).expect("small ray"))
                    .collect();
                prim.retain(|p| extreme.contains(p));
            }
        }
        let rays = prim.iter().map(|p| LatticeVector::from_intrinsic(space, p)).collect();
        Ok(Cone { space, rays })
    }

    /// Builds a cone from generators already known to be its primitive
    /// extreme rays.
    pub fn from_extreme(space: LatticeSpace, mut rays: Vec<LatticeVector>) -> Cone {
        rays.sort_by_key(LatticeVector::intrinsic);
        Cone { space, rays }
    }

    pub fn from_intrinsic(space: LatticeSpace, gens: &[Vec<i64>]) -> Result<Cone> {
        let v: Vec<LatticeVector> = gens.iter().map(|g| LatticeVector::from_intrinsic(space, g)).collect();
        Self::new(space, &v)
    }

    pub fn space(&self) -> LatticeSpace {
        self.space
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn intrinsic_rays(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(LatticeVector::intrinsic).collect()
    }

    pub fn dim(&self) -> usize {
        rank_i64(&self.intrinsic_rays())
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Simplicial with generators extendable to a lattice basis.
    pub fn is_unimodular(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        let g = self.intrinsic_rays();
        let n = self.space.rank();
        if g.len() == n {
            return det_i64(&g).abs() == Z::from(1);
        }
        // Gcd of maximal minors is 1 iff the column echelon pivots are ±1.
        let t: Vec<Vec<i64>> = (0..n).map(|i| g.iter().map(|r| r[i]).collect()).collect();
        let (h, _, rank) = column_echelon(&t, g.len());
        let mut col = 0;
        for row in &h {
            if col < rank && !row[col].is_zero() {
                if row[col].abs() != Z::from(1) {
                    return false;
                }
                col += 1;
            }
        }
        true
    }

    /// Intrinsic generators of the dual cone.
    pub fn inequalities(&self) -> Vec<Vec<i64>> {
        dual_generators(&self.intrinsic_rays(), self.space.rank())
    }

    pub fn dual(&self) -> Cone {
        let d = self.space.dual();
        let gens: Vec<LatticeVector> =
            self.inequalities().iter().map(|g| LatticeVector::from_intrinsic(d, g)).collect();
        Cone::new(d, &gens).expect("dual generators share a lattice")
    }

    pub fn is_pointed(&self) -> bool {
        rank_i64(&self.inequalities()) == self.space.rank()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.space() == self.space && self.contains_q(&to_q_vec(&v.intrinsic()))
    }

    pub fn contains_q(&self, x: &[Q]) -> bool {
        self.inequalities()
            .iter()
            .all(|m| !m.iter().zip(x).fold(Q::zero(), |s, (&a, x)| s + Q::from_integer(a.into()) * x).is_negative())
    }

    /// Sorted intrinsic generators, used as a hashable key.
    pub fn canonical(&self) -> Vec<Vec<i64>> {
        self.intrinsic_rays()
    }

    pub fn hilbert_basis(&self) -> Result<Vec<LatticeVector>> {
        hilbert_basis(self)
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

/// Minimal generators of the semigroup of lattice points in a pointed cone.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<LatticeVector>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    let n = c.space.rank();
    let gens = c.intrinsic_rays();
    if gens.is_empty() {
        return Ok(vec![]);
    }
    // Work in the saturated lattice span(C) ∩ ℤⁿ with a chosen basis.
    let qg: Vec<Vec<Q>> = gens.iter().map(|g| to_q_vec(g)).collect();
    let eqs: Vec<Vec<i64>> = kernel_q(&qg, n)
        .iter()
        .map(|e| z_to_i64(&crate::arith::integral_direction(e)).expect("small equation"))
        .collect();
    let basis: Vec<Vec<i64>> = if eqs.is_empty() {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        integer_kernel(&eqs, n).iter().map(|b| z_to_i64(b).expect("small basis")).collect()
    };
    let k = basis.len();
    let bt: Vec<Vec<Q>> = (0..n).map(|i| basis.iter().map(|b| Q::from_integer(b[i].into())).collect()).collect();
    let local: Vec<Vec<i64>> = qg
        .iter()
        .map(|g| {
            let x = solve_q(&bt, g).expect("generator lies in its span");
            x.iter().map(|v| crate::arith::to_i64(v).expect("integral coordinates")).collect()
        })
        .collect();
    let hb = hilbert_full(&local, k);
    let mut out: Vec<LatticeVector> = hb
        .iter()
        .map(|x| {
            let v: Vec<i64> = (0..n).map(|i| x.iter().zip(&basis).map(|(c, b)| c * b[i]).sum()).collect();
            LatticeVector::from_intrinsic(c.space, &v)
        })
        .collect();
    out.sort_by_key(LatticeVector::intrinsic);
    Ok(out)
}

/// Hilbert basis of a full-dimensional pointed cone in ℤᵏ.
fn hilbert_full(rays: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let ineqs = dual_generators(rays, k);
    let inside = |x: &[i64]| ineqs.iter().all(|m| m.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0);
    let level = |x: &[i64]| -> i64 { ineqs.iter().map(|m| m.iter().zip(x).map(|(a, b)| a * b).sum::<i64>()).sum() };
    let mut cands: BTreeSet<Vec<i64>> = rays.iter().cloned().collect();
    for subset in (0..rays.len()).combinations(k) {
        let g: Vec<Vec<i64>> = (0..k).map(|i| subset.iter().map(|&j| rays[j][i]).collect()).collect();
        if det_i64(&g).is_zero() {
            continue;
        }
        let (h, _, _) = column_echelon(&g, k);
        let diag: Vec<i64> = (0..k).map(|i| z_to_i64(&[h[i][i].clone()]).expect("small")[0]).collect();
        let gq: Vec<Vec<Q>> = g.iter().map(|r| to_q_vec(r)).collect();
        for x in diag.iter().map(|&d| 0..d).multi_cartesian_product() {
            let lam = solve_q(&gq, &to_q_vec(&x)).expect("invertible");
            let frac: Vec<Q> = lam.iter().map(|l| l - l.floor()).collect();
            let p: Vec<i64> = (0..k)
                .map(|i| {
                    let s = frac.iter().zip(&g[i]).fold(Q::zero(), |s, (f, &a)| s + f * Q::from_integer(a.into()));
                    crate::arith::to_i64(&s).expect("lattice point")
                })
                .collect();
            if p.iter().any(|&v| v != 0) {
                cands.insert(p);
            }
        }
    }
    let cands: Vec<Vec<i64>> = cands.into_iter().sorted_by_key(|x| level(x)).collect();
    cands
        .iter()
        .filter(|x| {
            !cands.iter().any(|y| {
                y != *x && level(y) <= level(x) && {
                    let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    inside(&d)
                }
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(gens: &[&[i64]]) -> Cone {
        let v: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        Cone::from_intrinsic(LatticeSpace::Free(gens[0].len()), &v).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = free(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn redundant_generator_dropped() {
        let c = free(&[&[1, 0], &[0, 1], &[1, 1], &[2, 4]]);
        assert_eq!(c.canonical(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn unimodular_basis() {
        let c = free(&[&[1, 0], &[0, 1]]);
        let hb = c.hilbert_basis().unwrap();
        assert_eq!(hb.len(), 2);
        assert!(c.is_unimodular());
    }

    #[test]
    fn classic_two_dim_cone() {
        // cone{(1,0),(1,3)} needs (1,1) and (1,2) as well.
        let c = free(&[&[1, 0], &[1, 3]]);
        let hb: Vec<Vec<i64>> = c.hilbert_basis().unwrap().iter().map(LatticeVector::intrinsic).collect();
        assert_eq!(hb.len(), 4);
        assert!(hb.contains(&vec![1, 1]) && hb.contains(&vec![1, 2]));
    }

    #[test]
    fn lower_dimensional_cone() {
        // cone{(1,0,0),(1,2,0)} spans a plane; basis includes (1,1,0).
        let c = free(&[&[1, 0, 0], &[1, 2, 0]]);
        let hb: Vec<Vec<i64>> = c.hilbert_basis().unwrap().iter().map(LatticeVector::intrinsic).collect();
        assert_eq!(hb, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 0]]);
    }

    #[test]
    fn half_plane_is_not_pointed() {
        let c = free(&[&[1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(c.hilbert_basis(), Err(Error::NotPointed));
    }

    #[test]
    fn containment() {
        let c = free(&[&[1, 0], &[1, 3]]);
        assert!(c.contains(&LatticeVector::free(vec![2, 3])));
        assert!(!c.contains(&LatticeVector::free(vec![0, 1])));
    }
}
