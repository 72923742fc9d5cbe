//! Family equations in the Cox coordinates of Π and the combinatorial
//! facts used in the smooth-fiber analysis.

use std::collections::BTreeSet;

use num_traits::One;

use super::cyclotomic::Cyc;
use super::labels::{RayKind, RayLabel};
use super::laurent::{LaurentPolynomial, PsiPoly, Variables};
use crate::arith::{solve_q, to_i64, to_q_vec, Q};
use crate::error::{Error, Result};
use crate::lattice::{Fan, LatticeSpace, LatticeVector};

/// The family parameter, either a fixed value or left symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Psi {
    Value(Cyc),
    Symbol,
}

impl Psi {
    /// 3ψ as a coefficient.
    fn three_psi(&self) -> PsiPoly {
        match self {
            Psi::Value(p) => PsiPoly::constant(&Cyc::int(3) * p),
            Psi::Symbol => PsiPoly::monomial(Cyc::int(3), 1),
        }
    }
}

fn cox_variables() -> Variables {
    Variables::Cox(RayLabel::all().iter().map(ToString::to_string).collect())
}

/// h₁ (from U-labelled rays and t = 1..3) and h₂ (V-labelled rays, t = 4..6).
pub fn cox_equations(psi: &Psi) -> (LaurentPolynomial, LaurentPolynomial) {
    let labels = RayLabel::all();
    let build = |kind: RayKind, range: std::ops::RangeInclusive<u8>| {
        let lead: Vec<i64> = labels.iter().map(|l| i64::from(l.kind == kind)).collect();
        let mut h = LaurentPolynomial::zero(cox_variables()).with_term(lead, psi.three_psi());
        for t in range {
            h.add_term(labels.iter().map(|l| l.phi(t)).collect(), PsiPoly::constant(-Cyc::one()));
        }
        h
    };
    (build(RayKind::U, 1..=3), build(RayKind::V, 4..=6))
}

/// Exponent of h's leading monomial, i.e. the divisor it is a section of.
pub fn divisor_exponents(kind: RayKind) -> Vec<i64> {
    RayLabel::all().iter().map(|l| i64::from(l.kind == kind)).collect()
}

/// Column of Cox variables of `h` matched to the rays of `fan`.
fn fan_positions(fan: &Fan) -> Result<Vec<usize>> {
    RayLabel::all()
        .iter()
        .map(|l| fan.ray_index(&l.vector()).ok_or_else(|| Error::UnknownRay(l.to_string())))
        .collect()
}

/// Solves ⟨m, ρ⟩ = values[ρ] for an integral m ∈ M, using `rows` as the rays.
fn character(rays: &[LatticeVector], values: &[i64]) -> Option<Vec<i64>> {
    let a: Vec<Vec<Q>> = rays.iter().map(|r| to_q_vec(&r.intrinsic())).collect();
    let b = to_q_vec(values);
    let m = solve_q(&a, &b)?;
    m.iter().map(to_i64).collect()
}

/// Restriction of a section of the divisor with exponents `base` to the
/// dense torus, via the chart of maximal cone `cone` of `fan`.
pub fn torus_restriction(h: &LaurentPolynomial, base: &[i64], fan: &Fan, cone: usize) -> Result<LaurentPolynomial> {
    let pos = fan_positions(fan)?;
    let all_rays: Vec<LatticeVector> = pos.iter().map(|&p| fan.rays()[p].clone()).collect();
    let sigma: BTreeSet<usize> = fan.maximal_cones().get(cone).ok_or_else(|| Error::Invalid(format!("no cone {cone}")))?.iter().copied().collect();
    let chart: Vec<usize> = (0..pos.len()).filter(|&k| sigma.contains(&pos[k])).collect();
    let mut out = LaurentPolynomial::zero(Variables::Torus);
    for (e, c) in h.terms() {
        let diff: Vec<i64> = e.iter().zip(base).map(|(x, a)| x - a).collect();
        let rays: Vec<LatticeVector> = chart.iter().map(|&k| all_rays[k].clone()).collect();
        let vals: Vec<i64> = chart.iter().map(|&k| diff[k]).collect();
        let m = character(&rays, &vals).ok_or_else(|| Error::Invalid("monomial is not a character on the chart".into()))?;
        let mv = LatticeVector::from_intrinsic(LatticeSpace::M, &m);
        if all_rays.iter().zip(&diff).any(|(r, d)| mv.pair(r).ok() != Some(*d)) {
            return Err(Error::Invalid("monomial is not a section of the given divisor".into()));
        }
        out.add_term(mv.coords().to_vec(), c.clone());
    }
    Ok(out)
}

/// All monomials of `h` have the same class: pairwise exponent differences
/// are given by integral characters on every ray of `fan`.
pub fn same_class(h: &LaurentPolynomial, fan: &Fan) -> Result<bool> {
    let pos = fan_positions(fan)?;
    let rays: Vec<LatticeVector> = pos.iter().map(|&p| fan.rays()[p].clone()).collect();
    let exps: Vec<&Vec<i64>> = h.terms().map(|(e, _)| e).collect();
    Ok(exps.windows(2).all(|w| {
        let d: Vec<i64> = w[0].iter().zip(w[1]).map(|(a, b)| a - b).collect();
        character(&rays, &d).is_some()
    }))
}

fn ray_indices(rays: &[RayLabel], fan: &Fan) -> Result<BTreeSet<usize>> {
    rays.iter().map(|l| fan.ray_index(&l.vector()).ok_or_else(|| Error::UnknownRay(l.to_string()))).collect()
}

/// True iff no cone of `fan` contains all of `rays`.
pub fn no_common_cone(rays: &[RayLabel], fan: &Fan) -> Result<bool> {
    let want = ray_indices(rays, fan)?;
    Ok(!fan.maximal_cones().iter().any(|c| want.iter().all(|r| c.contains(r))))
}

/// Indices s with φ_s vanishing on every ray of the cone spanned by `rays`,
/// which must lie in a common cone of `fan`.
pub fn missing_indices(rays: &[RayLabel], fan: &Fan) -> Result<Vec<u8>> {
    if no_common_cone(rays, fan)? {
        return Err(Error::Invalid("rays do not span a cone of the fan".into()));
    }
    Ok((1..=6).filter(|&s| rays.iter().all(|r| r.phi(s) == 0)).collect())
}

fn labels_of(fan: &Fan, cone: &[usize]) -> Result<Vec<RayLabel>> {
    cone.iter()
        .map(|&i| RayLabel::from_vector(&fan.rays()[i]).ok_or_else(|| Error::UnknownRay(fan.rays()[i].to_string())))
        .collect()
}

/// Every cone of `fan` (all faces of all maximal cones) misses some index.
pub fn index_support_obstruction(fan: &Fan) -> Result<bool> {
    for face in fan.simplicial_faces() {
        let labels = labels_of(fan, &face)?;
        if !(1..=6).any(|s| labels.iter().all(|r| r.phi(s) == 0)) {
            return Ok(false);
        }
    }
    Ok(true)
}
