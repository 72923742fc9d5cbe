//! Regularity of a triangulation via the interior of its secondary cone.
//!
//! Every interior wall F between F∪{a} and F∪{b} carries the unique affine
//! dependence λ on F∪{a,b} with λ_a, λ_b > 0; heights h are strictly convex
//! across the wall when ⟨λ, h⟩ > 0. A configuration point q that is not a
//! vertex gets h_q − Σ μ_v h_v > 0 for its barycentric coordinates μ in a
//! simplex containing it. Writing C for the constraint matrix, the LP
//!
//!   min t  s.t.  Cᵀy = 0,  Σy + t = 1,  y, t ≥ 0
//!
//! is the dual of  max s  s.t.  C h ≥ s,  s ≤ 1.  A positive optimum gives
//! heights from the multipliers; a zero optimum leaves y ≥ 0 with Cᵀy = 0,
//! which rules out any strictly convex height function.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::geom::facet_planes;
use super::simplex::{integer_points, Triangulation};
use crate::arith::{det_i64, fmt_q, parse_q, solve_q, Q, Z};
use crate::error::{Error, Result};
use crate::lattice::hull::Hull;
use crate::lp::{self, Lp, LpStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Interior wall: shared face and the two opposite vertices.
    Wall { face: Vec<usize>, a: usize, b: usize },
    /// Non-vertex point lying in the given simplex.
    Interior { point: usize, simplex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub coeffs: Vec<(usize, Q)>,
}

impl Constraint {
    pub fn eval(&self, h: &[Q]) -> Q {
        self.coeffs.iter().fold(Q::zero(), |s, (i, c)| s + c * &h[*i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryCertificate {
    pub heights: Vec<Q>,
    pub slack: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub heights: BTreeMap<String, String>,
    pub slack: String,
}

impl SecondaryCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            heights: self.heights.iter().enumerate().map(|(i, h)| (i.to_string(), fmt_q(h))).collect(),
            slack: fmt_q(&self.slack),
        }
    }

    pub fn from_json(j: &CertificateJson, points: usize) -> Result<Self> {
        let mut heights = vec![Q::zero(); points];
        for (k, v) in &j.heights {
            let i: usize = k.parse().map_err(|_| Error::Parse(format!("bad point index {k}")))?;
            *heights.get_mut(i).ok_or_else(|| Error::Parse(format!("point index {i} out of range")))? = parse_q(v)?;
        }
        Ok(SecondaryCertificate { heights, slack: parse_q(&j.slack)? })
    }
}

/// Nonnegative weights on constraints whose combination vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityWitness {
    pub weights: Vec<(usize, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projectivity {
    Regular(SecondaryCertificate),
    NotRegular(InfeasibilityWitness),
}

#[derive(Clone, Debug)]
pub struct ProjectivityResult {
    pub constraints: Vec<Constraint>,
    pub outcome: Projectivity,
    pub pivots: usize,
}

/// Integer points of the configuration in coordinates where it is full-dimensional.
fn projected(t: &Triangulation) -> Vec<Vec<i64>> {
    let hull = Hull::new(&t.points, t.space.rank());
    let proj: Vec<Vec<Q>> = t.points.iter().map(|p| hull.coords.iter().map(|&c| p[c].clone()).collect()).collect();
    integer_points(&proj).0
}

/// Affine dependence of d+2 points in ℤᵈ, via signed maximal minors of the
/// homogenized matrix, reduced to a primitive vector.
fn circuit(points: &[&[i64]]) -> Vec<Z> {
    let d = points[0].len();
    let cols = points.len();
    let lam: Vec<Z> = (0..cols)
        .map(|k| {
            let m: Vec<Vec<i64>> = (0..=d)
                .map(|r| (0..cols).filter(|&c| c != k).map(|c| if r < d { points[c][r] } else { 1 }).collect())
                .collect();
            let v = det_i64(&m);
            if k % 2 == 0 { v } else { -v }
        })
        .collect();
    let g = lam.iter().fold(Z::zero(), |g, x| g.gcd(x));
    if g.is_zero() { lam } else { lam.into_iter().map(|x| x / &g).collect() }
}

/// Builds the wall and interior-point constraints of the secondary cone.
pub fn secondary_constraints(t: &Triangulation) -> Result<Vec<Constraint>> {
    let pts = projected(t);
    let d = pts[0].len();
    let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in &t.simplices {
        if s.len() != d + 1 {
            return Err(Error::Subdivision("simplex is not full-dimensional".into()));
        }
        for &opp in s {
            let mut face: Vec<usize> = s.iter().copied().filter(|&k| k != opp).collect();
            face.sort_unstable();
            walls.entry(face).or_default().push(opp);
        }
    }
    let mut out = Vec::new();
    for (face, opp) in walls {
        match opp.as_slice() {
            [_] => {}
            &[a, b] => {
                let mut ids = face.clone();
                ids.extend([a, b]);
                let ps: Vec<&[i64]> = ids.iter().map(|&k| pts[k].as_slice()).collect();
                let mut lam = circuit(&ps);
                if lam[d + 1].is_negative() {
                    lam.iter_mut().for_each(|x| *x = -x.clone());
                }
                if !lam[d].is_positive() || !lam[d + 1].is_positive() {
                    return Err(Error::Subdivision(format!("wall {face:?} does not separate its simplices")));
                }
                let coeffs =
                    ids.iter().zip(lam).filter(|(_, l)| !l.is_zero()).map(|(&i, l)| (i, Q::from_integer(l))).collect();
                out.push(Constraint { kind: ConstraintKind::Wall { face, a, b }, coeffs });
            }
            _ => return Err(Error::Subdivision(format!("face {face:?} lies in more than two simplices"))),
        }
    }
    let used: BTreeSet<usize> = t.simplices.iter().flatten().copied().collect();
    for q in (0..pts.len()).filter(|k| !used.contains(k)) {
        let host = t.simplices.iter().position(|s| {
            let vs: Vec<&[i64]> = s.iter().map(|&k| pts[k].as_slice()).collect();
            facet_planes(&vs).iter().all(|p| p.side(&pts[q]) >= 0)
        });
        let Some(si) = host else {
            return Err(Error::Subdivision(format!("point {q} lies in no simplex")));
        };
        let s = &t.simplices[si];
        // Barycentric coordinates: Σ μ_v (v, 1) = (q, 1).
        let rows: Vec<Vec<Q>> = (0..=d)
            .map(|r| s.iter().map(|&v| Q::from_integer(if r < d { pts[v][r] } else { 1 }.into())).collect())
            .collect();
        let rhs: Vec<Q> = (0..=d).map(|r| Q::from_integer(if r < d { pts[q][r] } else { 1 }.into())).collect();
        let mu = solve_q(&rows, &rhs).expect("simplex is nondegenerate");
        let mut coeffs = vec![(q, Q::one())];
        coeffs.extend(s.iter().zip(mu).filter(|(_, m)| !m.is_zero()).map(|(&v, m)| (v, -m)));
        out.push(Constraint { kind: ConstraintKind::Interior { point: q, simplex: si }, coeffs });
    }
    Ok(out)
}

pub fn check_projective(t: &Triangulation) -> Result<ProjectivityResult> {
    let constraints = secondary_constraints(t)?;
    let n = t.points.len();
    let mut prob = Lp::new(n + 1);
    prob.b[n] = Q::one();
    for c in &constraints {
        let mut col = c.coeffs.clone();
        col.push((n, Q::one()));
        prob.add_column(col, Q::zero());
    }
    prob.add_column(vec![(n, Q::one())], Q::one());
    let sol = lp::solve(&prob);
    if sol.status != LpStatus::Optimal {
        return Err(Error::Invalid("secondary-cone LP did not reach an optimum".into()));
    }
    let outcome = if sol.objective.is_positive() {
        let heights = sol.duals[..n].iter().map(|y| -y.clone()).collect();
        Projectivity::Regular(SecondaryCertificate { heights, slack: sol.duals[n].clone() })
    } else {
        let weights =
            sol.x[..constraints.len()].iter().enumerate().filter(|(_, y)| !y.is_zero()).map(|(i, y)| (i, y.clone())).collect();
        Projectivity::NotRegular(InfeasibilityWitness { weights })
    };
    Ok(ProjectivityResult { constraints, outcome, pivots: sol.pivots })
}

/// Re-evaluates every constraint on the certificate's heights.
pub fn verify_certificate(constraints: &[Constraint], cert: &SecondaryCertificate) -> bool {
    cert.slack.is_positive() && constraints.iter().all(|c| c.eval(&cert.heights) >= cert.slack)
}

/// Checks that the weights are nonnegative, not all zero, and cancel every height.
pub fn verify_witness(constraints: &[Constraint], points: usize, w: &InfeasibilityWitness) -> bool {
    let mut total = vec![Q::zero(); points];
    for (i, y) in &w.weights {
        if y.is_negative() {
            return false;
        }
        for (p, c) in &constraints[*i].coeffs {
            total[*p] += y * c;
        }
    }
    w.weights.iter().any(|(_, y)| y.is_positive()) && total.iter().all(Zero::is_zero)
}

/// Regular triangulation induced by lifting `points` with `heights` (lower faces).
pub fn regular_triangulation(t_points: &[Vec<Q>], heights: &[Q], space: crate::lattice::LatticeSpace) -> Triangulation {
    let d = t_points[0].len();
    let lifted: Vec<Vec<Q>> =
        t_points.iter().zip(heights).map(|(p, h)| p.iter().cloned().chain(std::iter::once(h.clone())).collect()).collect();
    let hull = Hull::new(&lifted, d + 1);
    let last = hull.coords.iter().position(|&c| c == d).expect("heights are generic");
    let simplices: Vec<super::simplex::Simplex> = hull
        .facets
        .iter()
        .zip(&hull.incidence)
        .filter(|(f, _)| f.a[last].is_positive())
        .map(|(_, inc)| super::simplex::Simplex { space, vertices: inc.iter().map(|&k| t_points[k].clone()).collect() })
        .collect();
    Triangulation::with_points(space, t_points.to_vec(), &simplices)
}

/// Smallest wall margin of a height vector, as a float for reports.
pub fn min_margin(constraints: &[Constraint], heights: &[Q]) -> Option<f64> {
    constraints.iter().map(|c| c.eval(heights)).min().and_then(|m| m.to_f64())
}
