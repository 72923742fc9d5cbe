use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::cone::Cone;
use super::polytope::Polytope;
use super::vector::{LatticeSpace, LatticeVector};
use crate::arith::{integral_direction, q, to_q_vec, z_to_i64, Q};
use crate::error::{Error, Result};
use crate::lp::{self, Lp};

/// A fan stored as a sorted ray list plus maximal cones given by ray
/// indices (each index list sorted, cone list sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    space: LatticeSpace,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(space: LatticeSpace, cones: &[Cone]) -> Fan {
        let rays: Vec<LatticeVector> = cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos: BTreeMap<&LatticeVector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut idx: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.rays().iter().map(|r| pos[r]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        idx.sort();
        idx.dedup();
        Fan { space, rays, cones: idx }
    }

    /// Fan from an explicit ray list and index lists; rays must be primitive.
    pub fn from_indices(space: LatticeSpace, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        if let Some(r) = rays.iter().find(|r| r.space() != space || !r.is_primitive()) {
            return Err(Error::Invalid(format!("ray {r} is not a primitive vector of {}", space.label())));
        }
        if cones.iter().flatten().any(|&i| i >= rays.len()) {
            return Err(Error::Invalid("cone refers to a missing ray".into()));
        }
        let cs: Vec<Cone> =
            cones.iter().map(|c| Cone::new(space, &c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>())).collect::<Result<_>>()?;
        Ok(Fan::new(space, &cs))
    }

    pub fn space(&self) -> LatticeSpace {
        self.space
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone(&self, i: usize) -> Cone {
        Cone::from_extreme(self.space, self.cones[i].iter().map(|&r| self.rays[r].clone()).collect())
    }

    pub fn cones(&self) -> Vec<Cone> {
        (0..self.cones.len()).map(|i| self.cone(i)).collect()
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.binary_search(v).ok()
    }

    /// Set of maximal cones, each as its sorted generator list.
    pub fn canonical(&self) -> BTreeSet<Vec<Vec<i64>>> {
        self.cones().iter().map(Cone::canonical).collect()
    }

    pub fn same_cones(&self, other: &Fan) -> bool {
        self.space == other.space && self.canonical() == other.canonical()
    }

    /// Index of the first maximal cone containing `x`.
    pub fn find_cone(&self, x: &[Q]) -> Option<usize> {
        let ineqs: Vec<Vec<Vec<i64>>> = self.cones().iter().map(Cone::inequalities).collect();
        ineqs.iter().position(|ms| {
            ms.iter().all(|m| !m.iter().zip(x).fold(Q::zero(), |s, (&a, x)| s + q(a) * x).is_negative())
        })
    }

    /// Positions of the directions that lie in no maximal cone.
    pub fn uncovered(&self, dirs: &[Vec<Q>]) -> Vec<usize> {
        let ineqs: Vec<Vec<Vec<i64>>> = self.cones().iter().map(Cone::inequalities).collect();
        (0..dirs.len())
            .into_par_iter()
            .filter(|&k| {
                !ineqs.iter().any(|ms| {
                    ms.iter().all(|m| !m.iter().zip(&dirs[k]).fold(Q::zero(), |s, (&a, x)| s + q(a) * x).is_negative())
                })
            })
            .collect()
    }

    /// Pairs of maximal cones whose intersection is not the cone over
    /// their common rays.
    pub fn improper_pairs(&self) -> Vec<(usize, usize)> {
        let pairs: Vec<(usize, usize)> =
            (0..self.cones.len()).flat_map(|i| (i + 1..self.cones.len()).map(move |j| (i, j))).collect();
        pairs.into_par_iter().filter(|&(i, j)| !self.meets_properly(i, j)).collect()
    }

    fn meets_properly(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.cones[i], &self.cones[j]);
        let n = self.space.rank();
        let mut prob = Lp::new(n + 1);
        prob.b[n] = Q::one();
        for (list, other, sign) in [(a, b, 1i64), (b, a, -1)] {
            for &r in list {
                let v = self.rays[r].intrinsic();
                let mut col: Vec<(usize, Q)> = v.iter().enumerate().map(|(k, &x)| (k, q(sign * x))).collect();
                col.push((n, Q::one()));
                let cost = if other.contains(&r) { Q::zero() } else { q(-1) };
                prob.add_column(col, cost);
            }
        }
        let sol = lp::solve(&prob);
        sol.status != lp::LpStatus::Optimal || !sol.objective.is_negative()
    }

    /// For each maximal cone, a cone of `coarse` containing it.
    pub fn refines(&self, coarse: &Fan) -> Result<Vec<usize>> {
        let coarse_cones = coarse.cones();
        let ineqs: Vec<Vec<Vec<i64>>> = coarse_cones.iter().map(Cone::inequalities).collect();
        let holds = |c: usize, r: &LatticeVector| {
            let v = r.intrinsic();
            ineqs[c].iter().all(|m| m.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() >= 0)
        };
        if let Some(ray) = (0..self.rays.len()).find(|&r| !(0..coarse_cones.len()).any(|c| holds(c, &self.rays[r]))) {
            return Err(Error::NotRefinement { ray });
        }
        self.cones
            .iter()
            .map(|cone| {
                (0..coarse_cones.len())
                    .find(|&c| cone.iter().all(|&r| holds(c, &self.rays[r])))
                    .ok_or(Error::NotRefinement { ray: cone[0] })
            })
            .collect()
    }

    /// Every face of every maximal cone of a simplicial fan, as sorted
    /// ray-index sets (the empty face included).
    pub fn simplicial_faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u32..(1 << c.len()) {
                out.insert((0..c.len()).filter(|k| mask >> k & 1 == 1).map(|k| c[k]).collect());
            }
        }
        out
    }
}

fn integral(space: LatticeSpace, v: &[Q]) -> LatticeVector {
    LatticeVector::from_intrinsic(space, &z_to_i64(&integral_direction(v)).expect("small direction"))
}

/// Inner normal fan: one cone per vertex, the dual of the tangent cone.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional { dim: p.dim().unwrap_or(0), rank: p.space().rank() });
    }
    let space = p.space();
    let verts = p.vertices();
    let cones: Vec<Cone> = verts
        .par_iter()
        .map(|v| {
            let tangent: Vec<LatticeVector> = verts
                .iter()
                .filter(|w| *w != v)
                .map(|w| integral(space, &w.iter().zip(v).map(|(a, b)| a - b).collect::<Vec<_>>()))
                .collect();
            Cone::new(space, &tangent).map(|c| c.dual())
        })
        .collect::<Result<_>>()?;
    Ok(Fan::new(space.dual(), &cones))
}

/// Cones over the facets of a polytope with the origin in its interior.
pub fn face_fan(p: &Polytope) -> Result<Fan> {
    if !p.contains_origin_strictly() {
        let witness = p
            .hull()
            .facets
            .iter()
            .find(|f| !f.b.is_positive())
            .map(|f| f.a.iter().map(|x| x.to_string()).collect())
            .unwrap_or_default();
        return Err(Error::OriginNotInterior { witness });
    }
    let space = p.space();
    let cones: Vec<Cone> = p
        .facet_vertex_sets()
        .iter()
        .map(|f| Cone::new(space, &f.iter().map(|&i| integral(space, &p.vertices()[i])).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    Ok(Fan::new(space, &cones))
}

/// Directions in ℚⁿ with small integer coordinates, drawn from `next`.
pub fn sample_directions(n: usize, count: usize, mut next: impl FnMut() -> i64) -> Vec<Vec<Q>> {
    (0..count)
        .map(|_| loop {
            let v: Vec<i64> = (0..n).map(|_| next()).collect();
            if v.iter().any(|&x| x != 0) {
                break to_q_vec(&v);
            }
        })
        .collect()
}
