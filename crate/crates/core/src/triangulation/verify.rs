//! Exact verification of the triangulation axioms.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::geom::{facet_planes, plane_through, simplex_det, Plane};
use super::simplex::{integer_points, Triangulation};
use crate::arith::{to_q_vec, Q, Z};
use crate::lattice::hull::Hull;
use crate::lattice::{lattice_points, Polytope};
use crate::lp::{self, Lp, LpStatus};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub dimension: usize,
    pub simplices: usize,
    pub points: usize,
    /// Simplices with the wrong vertex count or zero volume.
    pub degenerate: Vec<usize>,
    /// Simplices with a vertex outside P.
    pub outside: Vec<usize>,
    pub volume_simplices: String,
    pub volume_polytope: String,
    /// Codimension-one faces that are not shared correctly.
    pub bad_walls: Vec<Vec<usize>>,
    /// (point, simplex): a vertex of the triangulation inside a simplex it does not span.
    pub embedded_points: Vec<(usize, usize)>,
    pub improper_pairs: Vec<(usize, usize)>,
    /// None when P is not a lattice polytope.
    pub missing_lattice_points: Option<Vec<Vec<Q>>>,
    pub star: bool,
    pub lp_checks: usize,
}

impl VerifyReport {
    pub fn covers(&self) -> bool {
        self.volume_simplices == self.volume_polytope && self.improper_pairs.is_empty()
    }

    pub fn axioms_hold(&self) -> bool {
        self.degenerate.is_empty()
            && self.outside.is_empty()
            && self.bad_walls.is_empty()
            && self.embedded_points.is_empty()
            && self.covers()
    }

    pub fn maximal(&self) -> bool {
        self.missing_lattice_points.as_ref().is_none_or(Vec::is_empty)
    }

    pub fn passes(&self) -> bool {
        self.axioms_hold() && self.maximal()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mask(Vec<u64>);

impl Mask {
    fn new(bits: usize) -> Self {
        Mask(vec![0; bits.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, o: &Mask) -> Mask {
        Mask(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

fn project(x: &[Q], coords: &[usize]) -> Vec<Q> {
    coords.iter().map(|&c| x[c].clone()).collect()
}

/// Pulling triangulation of the convex hull of `points[idx]`.
fn pulling(points: &[Vec<Q>], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub: Vec<Vec<Q>> = idx.iter().map(|&i| points[i].clone()).collect();
    let h = Hull::new(&sub, points[0].len());
    let apex_local = h.vertices[0];
    let apex = idx[apex_local];
    if h.dim == 0 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for inc in &h.incidence {
        if inc.contains(&apex_local) {
            continue;
        }
        let face: Vec<usize> = inc.iter().map(|&k| idx[k]).collect();
        for mut t in pulling(points, &face) {
            t.insert(0, apex);
            out.push(t);
        }
    }
    out
}

/// Does conv(a) ∩ conv(b) equal conv(a ∩ b)? Decided by maximizing the
/// weight a point of the intersection puts on vertices of `a` outside `b`.
fn proper_by_lp(a: &[(usize, &[i64])], b: &[(usize, &[i64])]) -> bool {
    let d = a[0].1.len();
    let mut prob = Lp::new(d + 2);
    prob.b[d] = Q::one();
    prob.b[d + 1] = Q::one();
    let shared: BTreeSet<usize> = b.iter().map(|(i, _)| *i).collect();
    for (i, x) in a {
        let mut col: Vec<(usize, Q)> = x.iter().enumerate().map(|(k, &v)| (k, Q::from_integer(v.into()))).collect();
        col.push((d, Q::one()));
        let cost = if shared.contains(i) { Q::zero() } else { -Q::one() };
        prob.add_column(col, cost);
    }
    for (_, x) in b {
        let mut col: Vec<(usize, Q)> = x.iter().enumerate().map(|(k, &v)| (k, Q::from_integer((-v).into()))).collect();
        col.push((d + 1, Q::one()));
        prob.add_column(col, Q::zero());
    }
    let sol = lp::solve(&prob);
    sol.status != LpStatus::Optimal || !sol.objective.is_negative()
}

struct Prepared {
    dim: usize,
    pts: Vec<Vec<i64>>,
    masks: Vec<Mask>,
    planes: Vec<Option<Vec<Plane>>>,
    sets: Vec<BTreeSet<usize>>,
}

/// Plane separation: all of τ weakly beyond one facet plane of σ, touching it only at shared vertices.
fn separated(p: &Prepared, i: usize, j: usize) -> bool {
    let planes = p.planes[i].as_ref().expect("nondegenerate");
    planes.iter().any(|pl| {
        p.sets[j].iter().all(|&v| {
            let s = pl.side(&p.pts[v]);
            s < 0 || (s == 0 && p.sets[i].contains(&v))
        })
    })
}

pub fn verify_triangulation(t: &Triangulation, poly: &Polytope) -> VerifyReport {
    let hull = poly.hull();
    let dim = hull.dim;
    let n_pts = t.points.len();

    // Scale configuration and polytope vertices together, then project.
    let mut all: Vec<Vec<Q>> = t.points.iter().map(|p| project(p, &hull.coords)).collect();
    all.extend(poly.vertices().iter().map(|p| project(p, &hull.coords)));
    let (scaled, _) = integer_points(&all);
    let pts: Vec<Vec<i64>> = scaled[..n_pts].to_vec();
    let poly_pts: Vec<Vec<i64>> = scaled[n_pts..].to_vec();

    let nf = hull.facets.len();
    let on_hull: Vec<bool> =
        t.points.iter().map(|p| hull.equations.iter().all(|e| e.eval(p).is_zero())).collect();
    let masks: Vec<Mask> = all[..n_pts]
        .iter()
        .map(|p| {
            let mut m = Mask::new(nf);
            for (f, ineq) in hull.facets.iter().enumerate() {
                if ineq.eval(p).is_zero() {
                    m.set(f);
                }
            }
            m
        })
        .collect();
    let inside: Vec<bool> = all[..n_pts]
        .iter()
        .zip(&on_hull)
        .map(|(p, &h)| h && hull.facets.iter().all(|f| !f.eval(p).is_negative()))
        .collect();

    let mut degenerate = Vec::new();
    let mut outside = Vec::new();
    let mut vol = Z::zero();
    let mut planes = Vec::with_capacity(t.len());
    for (i, s) in t.simplices.iter().enumerate() {
        let distinct: BTreeSet<usize> = s.iter().copied().collect();
        let ok_shape = s.len() == dim + 1 && distinct.len() == s.len() && s.iter().all(|&k| k < n_pts);
        if !ok_shape {
            degenerate.push(i);
            planes.push(None);
            continue;
        }
        if s.iter().any(|&k| !inside[k]) {
            outside.push(i);
        }
        let vs: Vec<&[i64]> = s.iter().map(|&k| pts[k].as_slice()).collect();
        let det = simplex_det(&vs);
        if det.is_zero() {
            degenerate.push(i);
            planes.push(None);
            continue;
        }
        vol += det.abs();
        planes.push(Some(facet_planes(&vs)));
    }

    let poly_idx: Vec<usize> = (0..poly_pts.len()).collect();
    let vol_p: Z = pulling(&all[n_pts..], &poly_idx)
        .iter()
        .map(|s| simplex_det(&s.iter().map(|&k| poly_pts[k].as_slice()).collect::<Vec<_>>()).abs())
        .sum();

    let sets: Vec<BTreeSet<usize>> = t.simplices.iter().map(|s| s.iter().copied().collect()).collect();
    let prep = Prepared { dim, pts, masks, planes, sets };
    let good: Vec<usize> = (0..t.len()).filter(|&i| prep.planes[i].is_some()).collect();

    // Walls: every codimension-one face lies in two simplices on opposite sides, or on ∂P.
    let mut walls: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for &i in &good {
        let s = &t.simplices[i];
        for &opp in s {
            let face: Vec<usize> = prep.sets[i].iter().copied().filter(|&k| k != opp).collect();
            walls.entry(face).or_default().push((i, opp));
        }
    }
    let bad_walls: Vec<Vec<usize>> = walls
        .par_iter()
        .filter(|(face, owners)| match owners.as_slice() {
            [_] => {
                let m = face.iter().skip(1).fold(prep.masks[face[0]].clone(), |m, &k| m.and(&prep.masks[k]));
                m.first().is_none()
            }
            [(_, a), (_, b)] => {
                let fp: Vec<&[i64]> = face.iter().map(|&k| prep.pts[k].as_slice()).collect();
                let pl = if prep.dim == 0 { return true } else { plane_through(&fp) };
                let (sa, sb) = (pl.side(&prep.pts[*a]), pl.side(&prep.pts[*b]));
                !((sa > 0 && sb < 0) || (sa < 0 && sb > 0))
            }
            _ => true,
        })
        .map(|(f, _)| f.clone())
        .collect();

    let used: Vec<usize> = t.simplices.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let embedded_points: Vec<(usize, usize)> = good
        .par_iter()
        .flat_map_iter(|&i| {
            let pl = prep.planes[i].as_ref().expect("nondegenerate");
            let prep = &prep;
            used.iter()
                .copied()
                .filter(move |k| !prep.sets[i].contains(k) && pl.iter().all(|p| p.side(&prep.pts[*k]) >= 0))
                .map(move |k| (k, i))
        })
        .collect();

    // Star reduction: a facet of P carrying all nonzero vertices of each simplex.
    let origin = t.origin_index();
    let star = t.is_star();
    let use_star = star && poly.contains_origin_strictly();
    let carrier: Vec<Option<usize>> = t
        .simplices
        .iter()
        .map(|s| {
            if !use_star {
                return None;
            }
            let mut it = s.iter().filter(|&&k| Some(k) != origin);
            let first = *it.next()?;
            it.fold(prep.masks[first].clone(), |m, &k| m.and(&prep.masks[k])).first()
        })
        .collect();

    let pair_results: Vec<(Vec<(usize, usize)>, usize)> = good
        .par_iter()
        .enumerate()
        .map(|(gi, &i)| {
            let mut bad = Vec::new();
            let mut lps = 0;
            for &j in &good[gi + 1..] {
                if prep.sets[i] == prep.sets[j] {
                    bad.push((i, j));
                    continue;
                }
                if let (Some(f), Some(g)) = (carrier[i], carrier[j]) {
                    if f != g {
                        let a_on_g = prep.sets[i].iter().filter(|&&k| prep.masks[k].has(g));
                        let b_on_f = prep.sets[j].iter().filter(|&&k| prep.masks[k].has(f));
                        if a_on_g.clone().all(|k| prep.sets[j].contains(k)) || b_on_f.clone().all(|k| prep.sets[i].contains(k)) {
                            continue;
                        }
                    }
                }
                if separated(&prep, i, j) || separated(&prep, j, i) {
                    continue;
                }
                lps += 1;
                let a: Vec<(usize, &[i64])> = prep.sets[i].iter().map(|&k| (k, prep.pts[k].as_slice())).collect();
                let b: Vec<(usize, &[i64])> = prep.sets[j].iter().map(|&k| (k, prep.pts[k].as_slice())).collect();
                if !proper_by_lp(&a, &b) {
                    bad.push((i, j));
                }
            }
            (bad, lps)
        })
        .collect();
    let lp_checks = pair_results.iter().map(|r| r.1).sum();
    let mut improper_pairs: Vec<(usize, usize)> = pair_results.into_iter().flat_map(|r| r.0).collect();
    improper_pairs.sort_unstable();

    let missing_lattice_points = poly.is_lattice().then(|| {
        let used: BTreeSet<Vec<Q>> = t.vertex_points().into_iter().collect();
        lattice_points(poly)
            .iter()
            .map(|v| to_q_vec(&v.intrinsic()))
            .filter(|p| !used.contains(p))
            .collect()
    });

    VerifyReport {
        dimension: dim,
        simplices: t.len(),
        points: n_pts,
        degenerate,
        outside,
        volume_simplices: vol.to_string(),
        volume_polytope: vol_p.to_string(),
        bad_walls,
        embedded_points,
        improper_pairs,
        missing_lattice_points,
        star,
        lp_checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpace;
    use crate::triangulation::simplex::Simplex;

    fn square() -> Polytope {
        Polytope::from_points(
            LatticeSpace::Free(2),
            &[to_q_vec(&[0, 0]), to_q_vec(&[1, 0]), to_q_vec(&[0, 1]), to_q_vec(&[1, 1])],
        )
    }

    fn tri(pts: &[[i64; 2]]) -> Simplex {
        Simplex::new(LatticeSpace::Free(2), pts.iter().map(|p| to_q_vec(p)).collect()).unwrap()
    }

    #[test]
    fn diagonal_split_passes() {
        let t = Triangulation::from_simplices(
            LatticeSpace::Free(2),
            &[tri(&[[0, 0], [1, 0], [1, 1]]), tri(&[[0, 0], [0, 1], [1, 1]])],
        );
        let r = verify_triangulation(&t, &square());
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.volume_polytope, "2");
    }

    #[test]
    fn overlapping_triangles_fail() {
        let t = Triangulation::from_simplices(
            LatticeSpace::Free(2),
            &[tri(&[[0, 0], [1, 0], [1, 1]]), tri(&[[0, 0], [1, 0], [0, 1]])],
        );
        let r = verify_triangulation(&t, &square());
        assert!(!r.passes());
        assert!(!r.improper_pairs.is_empty());
    }

    #[test]
    fn missing_triangle_fails_covering() {
        let t = Triangulation::from_simplices(LatticeSpace::Free(2), &[tri(&[[0, 0], [1, 0], [1, 1]])]);
        let r = verify_triangulation(&t, &square());
        assert!(!r.covers());
    }
}
