//! Named objects of the (3,3) construction in P⁵.
//!
//! Indices are 1-based throughout to match the usual labels u₁…u₆, v₁…v₆,
//! u_{ijk}, U_i, V_j and C_{i,j}.

use crate::arith::to_q_vec;
use crate::error::Result;
use crate::lattice::{normal_fan, Cone, Fan, LatticeSpace, LatticeVector, Polytope};
use crate::nef::NefPartition;
use crate::triangulation::{build_tau_p, fan_from_star_triangulation, Simplex, Triangulation};

fn e6(i: usize) -> [i64; 6] {
    let mut v = [0; 6];
    v[i - 1] = 1;
    v
}

/// u_i = 3e_i − e₁ − e₂ − e₃ in N.
pub fn u(i: usize) -> LatticeVector {
    let mut c = [0i64; 6];
    c[i - 1] += 3;
    for k in 0..3 {
        c[k] -= 1;
    }
    LatticeVector::n(c)
}

/// v_i = 3e_i − e₄ − e₅ − e₆ in N.
pub fn v(i: usize) -> LatticeVector {
    let mut c = [0i64; 6];
    c[i - 1] += 3;
    for k in 3..6 {
        c[k] -= 1;
    }
    LatticeVector::n(c)
}

/// u_{abc} = −e₁ − e₂ − e₃ + e_a + e_b + e_c.
pub fn u3(a: usize, b: usize, c: usize) -> LatticeVector {
    let mut x = [0i64; 6];
    for k in 0..3 {
        x[k] -= 1;
    }
    for i in [a, b, c] {
        x[i - 1] += 1;
    }
    LatticeVector::n(x)
}

/// v_{abc} = −e₄ − e₅ − e₆ + e_a + e_b + e_c.
pub fn v3(a: usize, b: usize, c: usize) -> LatticeVector {
    let mut x = [0i64; 6];
    for k in 3..6 {
        x[k] -= 1;
    }
    for i in [a, b, c] {
        x[i - 1] += 1;
    }
    LatticeVector::n(x)
}

/// e_i in M.
pub fn e(i: usize) -> LatticeVector {
    LatticeVector::m(e6(i))
}

fn hull(points: &[LatticeVector]) -> Polytope {
    Polytope::from_lattice(points)
}

/// Δ = conv{6e_i − (e₁+…+e₆)}.
pub fn delta() -> Polytope {
    let pts: Vec<LatticeVector> = (1..=6)
        .map(|i| {
            let mut c = [-1i64; 6];
            c[i - 1] = 5;
            LatticeVector::n(c)
        })
        .collect();
    hull(&pts)
}

pub fn delta1() -> Polytope {
    hull(&(1..=6).map(u).collect::<Vec<_>>())
}

pub fn delta2() -> Polytope {
    hull(&(1..=6).map(v).collect::<Vec<_>>())
}

pub fn nef_delta() -> NefPartition {
    NefPartition::new(delta(), vec![delta1(), delta2()])
}

pub fn nabla1() -> Polytope {
    hull(&[LatticeVector::zero(LatticeSpace::M), e(1), e(2), e(3)])
}

pub fn nabla2() -> Polytope {
    hull(&[LatticeVector::zero(LatticeSpace::M), e(4), e(5), e(6)])
}

/// The sixteen points listed for ∇: 0, e₁…e₆ and e_i + e_j for i ≤ 3 < j.
pub fn nabla_listed_points() -> Vec<LatticeVector> {
    let mut pts = vec![LatticeVector::zero(LatticeSpace::M)];
    pts.extend((1..=6).map(e));
    for i in 1..=3 {
        for j in 4..=6 {
            pts.push(e(i).add(&e(j)));
        }
    }
    pts
}

pub fn nabla() -> Polytope {
    hull(&nabla_listed_points())
}

pub fn nef_nabla() -> NefPartition {
    NefPartition::new(nabla(), vec![nabla1(), nabla2()])
}

/// P = conv(Δ₁ ∪ Δ₂).
pub fn p_polytope() -> Polytope {
    let pts: Vec<LatticeVector> = (1..=6).map(u).chain((1..=6).map(v)).collect();
    hull(&pts)
}

/// Vertex order u₁,…,u₆,v₁,…,v₆ used by the facet constructions.
pub fn ordered_vertices() -> Vec<LatticeVector> {
    (1..=6).map(u).chain((1..=6).map(v)).collect()
}

fn cone_n(gens: Vec<LatticeVector>) -> Cone {
    Cone::new(LatticeSpace::N, &gens).expect("generators in N")
}

/// σ_i = cone{e_j : j ≠ i} in M.
pub fn sigma(i: usize) -> Cone {
    Cone::new(LatticeSpace::M, &(1..=6).filter(|&j| j != i).map(e).collect::<Vec<_>>()).expect("generators in M")
}

pub fn u_cone(i: usize) -> Cone {
    cone_n((1..=6).filter(|&k| k != i).map(u).collect())
}

pub fn v_cone(j: usize) -> Cone {
    cone_n((1..=6).filter(|&k| k != j).map(v).collect())
}

pub fn c_cone(i: usize, j: usize) -> Cone {
    let keep = |k: &usize| *k != i && *k != j;
    cone_n((1..=6).filter(keep).map(u).chain((1..=6).filter(keep).map(v)).collect())
}

/// The fifteen maximal cones U₁..U₃, V₄..V₆, C_{i,j}, with their names.
pub fn named_nabla_cones() -> Vec<(String, Cone)> {
    let mut out: Vec<(String, Cone)> = (1..=3).map(|i| (format!("U{i}"), u_cone(i))).collect();
    out.extend((4..=6).map(|j| (format!("V{j}"), v_cone(j))));
    for i in 1..=3 {
        for j in 4..=6 {
            out.push((format!("C{i},{j}"), c_cone(i, j)));
        }
    }
    out
}

pub fn sigma_delta() -> Result<Fan> {
    normal_fan(&delta())
}

pub fn sigma_nabla() -> Result<Fan> {
    normal_fan(&nabla())
}

/// The cone{v₁₂₃, v₁₂₄, v₂₂₄, v₂₃₄, v₂₃₅} singled out in the rationality argument.
pub fn rationality_cone() -> Cone {
    cone_n(vec![v3(1, 2, 3), v3(1, 2, 4), v3(2, 2, 4), v3(2, 3, 4), v3(2, 3, 5)])
}

/// The maximal star triangulation τ(P).
pub fn tau() -> Result<Triangulation> {
    Ok(build_tau_p()?.triangulation)
}

/// Π, the face fan of τ(P).
pub fn pi() -> Result<Fan> {
    fan_from_star_triangulation(&tau()?)
}

/// Σ_∇ with its maximal cones in the named order U₁..U₃, V₄..V₆, C_{i,j}.
pub fn sigma_nabla_named() -> Fan {
    Fan::new(LatticeSpace::N, &named_nabla_cones().into_iter().map(|(_, c)| c).collect::<Vec<_>>())
}

/// The standard non-regular triangulation of a triangle with an inner
/// triangle, twisted so no height function induces it.
pub fn nonregular_triangulation() -> Triangulation {
    let space = LatticeSpace::Free(2);
    let named = [('A', [4, 0]), ('B', [0, 4]), ('C', [0, 0]), ('a', [2, 1]), ('b', [1, 2]), ('c', [1, 1])];
    let pt = |n: char| to_q_vec(&named.iter().find(|(m, _)| *m == n).expect("named point").1);
    let simplices: Vec<Simplex> = ["abc", "ABb", "Aba", "BCc", "Bcb", "CAa", "Cac"]
        .iter()
        .map(|c| Simplex { space, vertices: c.chars().map(pt).collect() })
        .collect();
    let pts = named.iter().map(|(_, p)| to_q_vec(p)).collect();
    Triangulation::with_points(space, pts, &simplices)
}

/// Ambient rational coordinates helper for tests and reports.
pub fn q_point(v: &LatticeVector) -> Vec<crate::arith::Q> {
    to_q_vec(&v.intrinsic())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_agree() {
        assert_eq!(u3(1, 1, 1), u(1));
        assert_eq!(v3(4, 4, 4), v(4));
        assert!(u3(1, 2, 3).is_zero());
        assert_eq!(u(4).coords(), &[-1, -1, -1, 3, 0, 0]);
    }

    #[test]
    fn nabla_has_fifteen_vertices() {
        // The origin is listed among the sixteen points but is interior.
        assert_eq!(nabla().vertices().len(), 15);
        assert!(nabla().contains_origin_strictly());
    }
}
