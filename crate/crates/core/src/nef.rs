//! Nef-partitions, their duals, and torus-invariant divisor bookkeeping.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_q, q, solve_q, to_i64, to_q_vec, Q};
use crate::error::{Error, Result};
use crate::lattice::polytope::{fmt_point, Halfspace};
use crate::lattice::{dual_polytope, minkowski_sum, Fan, LatticeVector, Polytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefPartition {
    pub total: Polytope,
    pub parts: Vec<Polytope>,
}

/// Outcome of a nef-partition check: the first broken condition, if any,
/// with a witness point in intrinsic coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCheck {
    pub failure: Option<String>,
    pub witness: Option<Vec<Q>>,
}

impl NefCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(msg: String, witness: Vec<Q>) -> Self {
        NefCheck { failure: Some(msg), witness: Some(witness) }
    }
}

impl NefPartition {
    pub fn new(total: Polytope, parts: Vec<Polytope>) -> Self {
        NefPartition { total, parts }
    }

    /// Builds the partition whose total is the Minkowski sum of the parts.
    pub fn from_parts(parts: Vec<Polytope>) -> Result<Self> {
        let space = parts.first().ok_or_else(|| Error::Invalid("no parts".into()))?.space();
        let total = parts.iter().try_fold(Polytope::point(space), |acc, p| minkowski_sum(&acc, p))?;
        Ok(NefPartition { total, parts })
    }

    pub fn check(&self) -> NefCheck {
        is_nef_partition(self)
    }
}

pub fn is_nef_partition(np: &NefPartition) -> NefCheck {
    let space = np.total.space();
    let origin = vec![Q::zero(); space.rank()];
    for (i, p) in np.parts.iter().enumerate() {
        if p.space() != space {
            return NefCheck::fail(format!("part {i} lives in another lattice"), origin);
        }
        if let Some(v) = p.vertices().iter().find(|v| v.iter().any(|x| !x.is_integer())) {
            return NefCheck::fail(format!("part {i} is not a lattice polytope"), v.clone());
        }
        if !p.contains(&origin) {
            return NefCheck::fail(format!("part {i} does not contain the origin"), origin);
        }
        if p.dim() == Some(0) {
            return NefCheck::fail(format!("part {i} is zero-dimensional"), p.vertices()[0].clone());
        }
    }
    let sum = match np.parts.iter().try_fold(Polytope::point(space), |acc, p| minkowski_sum(&acc, p)) {
        Ok(s) => s,
        Err(e) => return NefCheck::fail(e.to_string(), origin),
    };
    if sum != np.total {
        let w = sum
            .vertices()
            .iter()
            .find(|v| !np.total.vertices().contains(v))
            .or_else(|| np.total.vertices().iter().find(|v| !sum.vertices().contains(v)))
            .cloned()
            .unwrap_or(origin);
        return NefCheck::fail("Minkowski sum of the parts differs from the total".into(), w);
    }
    match dual_polytope(&np.total) {
        Ok(d) if d.reflexive => NefCheck { failure: None, witness: None },
        Ok(d) => {
            let w = d
                .polytope
                .vertices()
                .iter()
                .find(|v| v.iter().any(|x| !x.is_integer()))
                .cloned()
                .unwrap_or(origin);
            NefCheck::fail(format!("total is not reflexive: dual vertex {}", fmt_point(&w)), w)
        }
        Err(e) => NefCheck::fail(format!("total is not reflexive: {e}"), origin),
    }
}

/// ∇ⱼ = {m : ⟨Δᵢ, m⟩ ≥ −δᵢⱼ for all i}, with ∇ the sum of the ∇ⱼ.
pub fn dual_nef_partition(np: &NefPartition) -> Result<NefPartition> {
    let space = np.total.space();
    let dual = space.dual();
    let parts: Vec<Polytope> = (0..np.parts.len())
        .map(|j| {
            let mut hs = Vec::new();
            for (i, p) in np.parts.iter().enumerate() {
                for v in p.lattice_vertices().ok_or_else(|| Error::Invalid(format!("part {i} is not a lattice polytope")))? {
                    if v.is_zero() {
                        continue;
                    }
                    let normal = LatticeVector::from_intrinsic(dual, &v.intrinsic());
                    hs.push(Halfspace { normal, offset: i64::from(i == j) });
                }
            }
            hs.sort();
            hs.dedup();
            Polytope::from_halfspaces(dual, &hs)
        })
        .collect::<Result<_>>()?;
    NefPartition::from_parts(parts)
}

/// A torus-invariant divisor Σ a_ρ D_ρ; coefficients align with the fan's rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDivisor {
    pub fan: Fan,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorJson {
    pub fan: crate::lattice::json::FanJson,
    pub coeffs: BTreeMap<String, i64>,
}

impl TorusDivisor {
    pub fn new(fan: Fan, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != fan.rays().len() {
            return Err(Error::Invalid(format!("{} coefficients for {} rays", coeffs.len(), fan.rays().len())));
        }
        Ok(TorusDivisor { fan, coeffs })
    }

    pub fn zero(fan: Fan) -> Self {
        let n = fan.rays().len();
        TorusDivisor { fan, coeffs: vec![0; n] }
    }

    /// Σ D_ρ, the anticanonical divisor.
    pub fn anticanonical(fan: Fan) -> Self {
        let n = fan.rays().len();
        TorusDivisor { fan, coeffs: vec![1; n] }
    }

    /// Sum of D_ρ over the rays satisfying `pred`.
    pub fn indicator(fan: Fan, pred: impl Fn(&LatticeVector) -> bool) -> Self {
        let coeffs = fan.rays().iter().map(|r| i64::from(pred(r))).collect();
        TorusDivisor { fan, coeffs }
    }

    pub fn coeff(&self, ray: &LatticeVector) -> Option<i64> {
        self.fan.ray_index(ray).map(|i| self.coeffs[i])
    }

    pub fn add(&self, o: &TorusDivisor) -> Result<TorusDivisor> {
        if self.fan != o.fan {
            return Err(Error::Invalid("divisors on different fans".into()));
        }
        Ok(TorusDivisor { fan: self.fan.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn to_json(&self) -> DivisorJson {
        DivisorJson {
            fan: crate::lattice::json::fan_to_json(&self.fan),
            coeffs: self.coeffs.iter().enumerate().map(|(i, &c)| (i.to_string(), c)).collect(),
        }
    }

    pub fn support_function(&self) -> Result<SupportFunction> {
        SupportFunction::new(self)
    }
}

/// Cartier data: one linear functional m_σ per maximal cone with
/// ⟨u_ρ, m_σ⟩ = −a_ρ on the rays of σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub fan: Fan,
    /// Intrinsic coordinates of m_σ, one per maximal cone.
    pub local: Vec<Vec<i64>>,
}

impl SupportFunction {
    pub fn new(d: &TorusDivisor) -> Result<Self> {
        let fan = &d.fan;
        let local = fan
            .maximal_cones()
            .iter()
            .enumerate()
            .map(|(ci, cone)| {
                let rows: Vec<Vec<Q>> = cone.iter().map(|&r| to_q_vec(&fan.rays()[r].intrinsic())).collect();
                let rhs: Vec<Q> = cone.iter().map(|&r| q(-d.coeffs[r])).collect();
                let m = solve_q(&rows, &rhs).ok_or(Error::NotCartier { cone: ci })?;
                m.iter().map(to_i64).collect::<Option<Vec<i64>>>().ok_or(Error::NotCartier { cone: ci })
            })
            .collect::<Result<_>>()?;
        Ok(SupportFunction { fan: fan.clone(), local })
    }

    /// φ(x) for x in the support, using any maximal cone containing x.
    pub fn eval(&self, x: &[Q]) -> Option<Q> {
        let c = self.fan.find_cone(x)?;
        Some(self.local[c].iter().zip(x).fold(Q::zero(), |s, (&m, x)| s + q(m) * x))
    }
}

/// P_D = {n : ⟨n, u_ρ⟩ + a_ρ ≥ 0}.
pub fn fundamental_polytope(d: &TorusDivisor) -> Result<Polytope> {
    let dual = d.fan.space().dual();
    let hs: Vec<Halfspace> = d
        .fan
        .rays()
        .iter()
        .zip(&d.coeffs)
        .map(|(r, &a)| Halfspace { normal: r.clone(), offset: a })
        .collect();
    Polytope::from_halfspaces(dual, &hs)
}

/// a_ρ = −min over the vertices of P of ⟨u_ρ, m⟩.
pub fn divisor_from_polytope(p: &Polytope, fan: &Fan) -> Result<TorusDivisor> {
    if p.space() != fan.space().dual() {
        return Err(Error::Space("polytope must live in the dual of the fan's lattice".into()));
    }
    let coeffs = fan
        .rays()
        .iter()
        .map(|r| {
            let u = to_q_vec(&r.intrinsic());
            let min = p
                .vertices()
                .iter()
                .map(|v| v.iter().zip(&u).fold(Q::zero(), |s, (a, b)| s + a * b))
                .min()
                .unwrap_or_else(Q::zero);
            to_i64(&-min.clone()).ok_or_else(|| Error::Invalid(format!("non-integral minimum {}", fmt_q(&min))))
        })
        .collect::<Result<_>>()?;
    TorusDivisor::new(fan.clone(), coeffs)
}

/// π*D on a refinement: a′_ρ = −φ_D(u_ρ).
pub fn pullback_divisor(d: &TorusDivisor, fine: &Fan) -> Result<TorusDivisor> {
    let phi = d.support_function()?;
    let owner = fine.refines(&d.fan)?;
    let mut coeffs = vec![None; fine.rays().len()];
    for (ci, cone) in fine.maximal_cones().iter().enumerate() {
        let m = &phi.local[owner[ci]];
        for &r in cone {
            if coeffs[r].is_none() {
                let u = fine.rays()[r].intrinsic();
                coeffs[r] = Some(-m.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>());
            }
        }
    }
    TorusDivisor::new(fine.clone(), coeffs.into_iter().map(|c| c.unwrap_or(0)).collect())
}
