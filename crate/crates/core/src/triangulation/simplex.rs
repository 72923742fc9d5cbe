use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rank_q, to_i64, to_q_vec, Q, Z};
use crate::error::{Error, Result};
use crate::lattice::json::{json_to_q, point_json};
use crate::lattice::{LatticeSpace, LatticeVector};

/// An affine simplex with an ordered vertex list (intrinsic coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub space: LatticeSpace,
    pub vertices: Vec<Vec<Q>>,
}

impl Simplex {
    pub fn new(space: LatticeSpace, vertices: Vec<Vec<Q>>) -> Result<Self> {
        let s = Simplex { space, vertices };
        if !s.is_independent() {
            return Err(Error::Subdivision("simplex vertices are affinely dependent".into()));
        }
        Ok(s)
    }

    pub fn from_lattice(points: &[LatticeVector]) -> Result<Self> {
        let space = points.first().map(LatticeVector::space).ok_or_else(|| Error::Subdivision("empty simplex".into()))?;
        Self::new(space, points.iter().map(|p| to_q_vec(&p.intrinsic())).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    fn is_independent(&self) -> bool {
        let Some(p0) = self.vertices.first() else { return false };
        let diffs: Vec<Vec<Q>> =
            self.vertices[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        diffs.is_empty() || rank_q(&diffs) == diffs.len()
    }

    pub fn translate(&self, w: &[Q]) -> Simplex {
        Simplex {
            space: self.space,
            vertices: self.vertices.iter().map(|v| v.iter().zip(w).map(|(a, b)| a + b).collect()).collect(),
        }
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(to_i64).collect::<Option<Vec<i64>>>().map(|c| LatticeVector::from_intrinsic(self.space, &c)))
            .collect()
    }
}

/// A point configuration with maximal simplices given as ordered index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub space: LatticeSpace,
    pub points: Vec<Vec<Q>>,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub space: String,
    pub points: Vec<Vec<serde_json::Value>>,
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Collects the simplices' vertices into a sorted point list; each
    /// simplex keeps its own vertex order. Repeated simplices are dropped.
    pub fn from_simplices(space: LatticeSpace, simplices: &[Simplex]) -> Self {
        let points: Vec<Vec<Q>> =
            simplices.iter().flat_map(|s| s.vertices.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        Self::with_points(space, points, simplices)
    }

    /// As [`Triangulation::from_simplices`] but over a given configuration,
    /// which may contain points used by no simplex.
    pub fn with_points(space: LatticeSpace, mut points: Vec<Vec<Q>>, simplices: &[Simplex]) -> Self {
        points.sort();
        points.dedup();
        let pos: BTreeMap<&Vec<Q>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut seen = BTreeSet::new();
        let mut idx = Vec::new();
        for s in simplices {
            let ix: Vec<usize> = s.vertices.iter().map(|v| pos[v]).collect();
            let mut key = ix.clone();
            key.sort_unstable();
            if seen.insert(key) {
                idx.push(ix);
            }
        }
        Triangulation { space, points, simplices: idx }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, i: usize) -> Simplex {
        Simplex { space: self.space, vertices: self.simplices[i].iter().map(|&k| self.points[k].clone()).collect() }
    }

    pub fn all_simplices(&self) -> Vec<Simplex> {
        (0..self.len()).map(|i| self.simplex(i)).collect()
    }

    /// Maximal simplices as unordered vertex sets, for comparisons.
    pub fn cells(&self) -> BTreeSet<Vec<Vec<Q>>> {
        self.all_simplices()
            .into_iter()
            .map(|s| {
                let mut v = s.vertices;
                v.sort();
                v
            })
            .collect()
    }

    /// Points actually used as vertices.
    pub fn vertex_points(&self) -> Vec<Vec<Q>> {
        let used: BTreeSet<usize> = self.simplices.iter().flatten().copied().collect();
        used.into_iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn origin_index(&self) -> Option<usize> {
        self.points.iter().position(|p| p.iter().all(Zero::is_zero))
    }

    pub fn is_star(&self) -> bool {
        self.origin_index().is_some_and(|o| self.simplices.iter().all(|s| s.contains(&o)))
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            space: self.space.label(),
            points: self.points.iter().map(|p| point_json(self.space, p)).collect(),
            simplices: self.simplices.clone(),
        }
    }

    pub fn from_json(j: &TriangulationJson) -> Result<Self> {
        let space = LatticeSpace::from_label(&j.space)?;
        let points: Vec<Vec<Q>> = j
            .points
            .iter()
            .map(|row| {
                let v: Vec<Q> = row.iter().map(json_to_q).collect::<Result<_>>()?;
                if v.len() != space.ambient_rank() {
                    return Err(Error::Parse("wrong coordinate count".into()));
                }
                Ok(v[..space.rank()].iter().map(|x| x - if space == LatticeSpace::M { v[5].clone() } else { Q::zero() }).collect())
            })
            .collect::<Result<_>>()?;
        if j.simplices.iter().flatten().any(|&i| i >= points.len()) {
            return Err(Error::Parse("simplex refers to a missing point".into()));
        }
        Ok(Triangulation { space, points, simplices: j.simplices.clone() })
    }
}

/// Scales rational points by the lcm of their denominators.
pub fn integer_points(points: &[Vec<Q>]) -> (Vec<Vec<i64>>, i64) {
    let l = points.iter().flatten().fold(Z::one(), |l, x| l.lcm(x.denom()));
    let lq = Q::from_integer(l.clone());
    let pts = points
        .iter()
        .map(|p| p.iter().map(|x| to_i64(&(x * &lq)).expect("coordinates fit in 64 bits")).collect())
        .collect();
    (pts, to_i64(&lq).expect("small scale"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_vertices_rejected() {
        let pts = vec![to_q_vec(&[0, 0]), to_q_vec(&[1, 1]), to_q_vec(&[2, 2])];
        assert!(Simplex::new(LatticeSpace::Free(2), pts).is_err());
    }

    #[test]
    fn duplicate_simplices_collapse() {
        let s = Simplex::new(LatticeSpace::Free(1), vec![to_q_vec(&[0]), to_q_vec(&[1])]).unwrap();
        let r = Simplex::new(LatticeSpace::Free(1), vec![to_q_vec(&[1]), to_q_vec(&[0])]).unwrap();
        let t = Triangulation::from_simplices(LatticeSpace::Free(1), &[s, r]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.points.len(), 2);
    }
}
