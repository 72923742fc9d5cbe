//! Convex hulls of finite rational point sets of any dimension.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dd::pointed_rays;
use crate::arith::{dot_q, integral_direction, kernel_q, rank_q, rref, Q, Z};

/// Facet inequality ⟨a, x⟩ + b ≥ 0 in the coordinates it was built in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ineq {
    pub a: Vec<Z>,
    pub b: Z,
}

impl Ineq {
    pub fn eval(&self, x: &[Q]) -> Q {
        let s = self.a.iter().zip(x).fold(Q::zero(), |s, (a, x)| s + Q::from_integer(a.clone()) * x);
        s + Q::from_integer(self.b.clone())
    }

    pub fn eval_i64(&self, x: &[i64]) -> Z {
        self.a.iter().zip(x).map(|(a, &x)| a * Z::from(x)).sum::<Z>() + &self.b
    }
}

/// Hull data: affine hull equations, a coordinate projection that is
/// injective on the affine hull, facets in projected coordinates, and the
/// indices of the input points that are vertices.
#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    pub ambient: usize,
    /// Equations ⟨a, x⟩ + b = 0 cutting out the affine hull.
    pub equations: Vec<Ineq>,
    pub coords: Vec<usize>,
    pub facets: Vec<Ineq>,
    pub vertices: Vec<usize>,
    /// For every facet, the input points lying on it.
    pub incidence: Vec<Vec<usize>>,
}

fn project(x: &[Q], coords: &[usize]) -> Vec<Q> {
    coords.iter().map(|&c| x[c].clone()).collect()
}

impl Hull {
    pub fn new(points: &[Vec<Q>], ambient: usize) -> Hull {
        if points.is_empty() {
            return Hull {
                dim: 0,
                ambient,
                equations: vec![],
                coords: vec![],
                facets: vec![],
                vertices: vec![],
                incidence: vec![],
            };
        }
        let p0 = &points[0];
        let diffs: Vec<Vec<Q>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let mut ech = diffs.clone();
        let piv = if ech.is_empty() { vec![] } else { rref(&mut ech) };
        let dim = piv.len();
        // Normals of the affine hull: kernel of the difference vectors.
        let normals = if ech.is_empty() {
            (0..ambient)
                .map(|i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect()
        } else {
            kernel_q(&ech, ambient)
        };
        let equations: Vec<Ineq> = normals
            .iter()
            .map(|nrm| {
                let mut full = nrm.clone();
                full.push(-dot_q(nrm, p0));
                let mut a = integral_direction(&full);
                let b = a.pop().expect("nonempty");
                Ineq { a, b }
            })
            .collect();
        // Pivot columns of the difference matrix give an injective projection.
        let coords = piv;
        let proj: Vec<Vec<Q>> = points.iter().map(|p| project(p, &coords)).collect();
        let (facets, incidence, vertices) = if dim == 0 {
            (vec![], vec![], vec![0])
        } else {
            full_dim_facets(&proj, dim)
        };
        Hull { dim, ambient, equations, coords, facets, vertices, incidence }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        if !self.equations.iter().all(|e| e.eval(x).is_zero()) {
            return false;
        }
        let px = project(x, &self.coords);
        self.facets.iter().all(|f| !f.eval(&px).is_negative())
    }

    pub fn contains_strictly_relative(&self, x: &[Q]) -> bool {
        self.contains(x) && {
            let px = project(x, &self.coords);
            self.facets.iter().all(|f| f.eval(&px).is_positive())
        }
    }
}

/// Facets of a full-dimensional point set in ℚᵈ, via the double
/// description of {(a, b) : ⟨a, p⟩ + b ≥ 0 for all p}.
fn full_dim_facets(points: &[Vec<Q>], d: usize) -> (Vec<Ineq>, Vec<Vec<usize>>, Vec<usize>) {
    let rows: Vec<Vec<Z>> = points
        .iter()
        .map(|p| {
            let mut h: Vec<Q> = p.clone();
            h.push(Q::one());
            integral_direction(&h)
        })
        .collect();
    let rays = pointed_rays(&rows, d + 1);
    let mut facets: Vec<Ineq> = rays
        .into_iter()
        .map(|r| Ineq { a: r[..d].to_vec(), b: r[d].clone() })
        .filter(|f| !f.a.iter().all(Zero::is_zero))
        .collect();
    facets.sort();
    let incidence: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| (0..points.len()).filter(|&i| f.eval(&points[i]).is_zero()).collect())
        .collect();
    // A point is a vertex when the facets through it have normals of rank d,
    // and it is the first copy of a repeated point.
    let mut vertices = Vec::new();
    for i in 0..points.len() {
        if (0..i).any(|j| points[j] == points[i]) {
            continue;
        }
        let normals: Vec<Vec<Q>> = facets
            .iter()
            .zip(&incidence)
            .filter(|(_, inc)| inc.contains(&i))
            .map(|(f, _)| f.a.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        if !normals.is_empty() && rank_q(&normals) == d {
            vertices.push(i);
        }
    }
    (facets, incidence, vertices)
}
