//! JSON forms of polytopes, cones and fans. Coordinates are ambient;
//! integers beyond 53 bits and non-integral rationals are written as
//! decimal strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::cone::Cone;
use super::fan::Fan;
use super::polytope::{ambient_q, Polytope};
use super::vector::{LatticeSpace, LatticeVector};
use crate::arith::{fmt_q, parse_q, to_i64, Q};
use crate::error::{Error, Result};

const SAFE: i64 = 1 << 53;

pub fn q_to_json(x: &Q) -> Value {
    match to_i64(x) {
        Some(v) if v.abs() < SAFE => Value::from(v),
        _ => Value::from(fmt_q(x)),
    }
}

pub fn json_to_q(v: &Value) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::arith::q)
            .ok_or_else(|| Error::Parse(format!("non-integral number {n}"))),
        Value::String(s) => parse_q(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub space: String,
    pub vertices: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub space: String,
    pub rays: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanJson {
    pub space: String,
    pub rays: Vec<Vec<Value>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

fn vec_json(v: &LatticeVector) -> Vec<Value> {
    v.coords().iter().map(|&x| q_to_json(&crate::arith::q(x))).collect()
}

fn parse_vector(space: LatticeSpace, row: &[Value]) -> Result<LatticeVector> {
    let c: Vec<i64> = row
        .iter()
        .map(|v| json_to_q(v).and_then(|x| to_i64(&x).ok_or_else(|| Error::Parse(format!("{v} is not an integer")))))
        .collect::<Result<_>>()?;
    LatticeVector::new(space, c)
}

pub fn polytope_to_json(p: &Polytope) -> PolytopeJson {
    PolytopeJson {
        space: p.space().label(),
        vertices: p.vertices_ambient().iter().map(|v| v.iter().map(q_to_json).collect()).collect(),
    }
}

pub fn polytope_from_json(j: &PolytopeJson) -> Result<Polytope> {
    let space = LatticeSpace::from_label(&j.space)?;
    if j.vertices.is_empty() {
        return Err(Error::Invalid("polytope has no vertices".into()));
    }
    let pts: Vec<Vec<Q>> = j
        .vertices
        .iter()
        .map(|row| {
            if row.len() != space.ambient_rank() {
                return Err(Error::Parse(format!("expected {} coordinates", space.ambient_rank())));
            }
            let v: Vec<Q> = row.iter().map(json_to_q).collect::<Result<_>>()?;
            intrinsic_q(space, &v)
        })
        .collect::<Result<_>>()?;
    Ok(Polytope::from_points(space, &pts))
}

/// Validates ambient rational coordinates and drops to intrinsic ones.
fn intrinsic_q(space: LatticeSpace, v: &[Q]) -> Result<Vec<Q>> {
    match space {
        LatticeSpace::N => {
            let s: Q = v.iter().sum();
            if s != Q::from_integer(0.into()) {
                return Err(Error::Invalid(format!("point {:?} does not sum to zero", v.iter().map(fmt_q).collect::<Vec<_>>())));
            }
            Ok(v[..5].to_vec())
        }
        LatticeSpace::M => Ok(v[..5].iter().map(|x| x - &v[5]).collect()),
        LatticeSpace::Free(_) => Ok(v.to_vec()),
    }
}

pub fn cone_to_json(c: &Cone) -> ConeJson {
    ConeJson { space: c.space().label(), rays: c.rays().iter().map(vec_json).collect() }
}

pub fn cone_from_json(j: &ConeJson) -> Result<Cone> {
    let space = LatticeSpace::from_label(&j.space)?;
    let rays: Vec<LatticeVector> = j.rays.iter().map(|r| parse_vector(space, r)).collect::<Result<_>>()?;
    Cone::new(space, &rays)
}

pub fn fan_to_json(f: &Fan) -> FanJson {
    FanJson {
        space: f.space().label(),
        rays: f.rays().iter().map(vec_json).collect(),
        maximal_cones: f.maximal_cones().to_vec(),
    }
}

pub fn fan_from_json(j: &FanJson) -> Result<Fan> {
    let space = LatticeSpace::from_label(&j.space)?;
    let rays: Vec<LatticeVector> = j.rays.iter().map(|r| parse_vector(space, r)).collect::<Result<_>>()?;
    Fan::from_indices(space, rays, j.maximal_cones.clone())
}

/// Ambient coordinates of an intrinsic rational point, for output.
pub fn point_json(space: LatticeSpace, v: &[Q]) -> Vec<Value> {
    ambient_q(space, v).iter().map(q_to_json).collect()
}
