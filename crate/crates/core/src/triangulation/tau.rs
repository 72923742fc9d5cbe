//! The maximal star triangulation τ(P) of P = conv(Δ₁ ∪ Δ₂).

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;

use super::esd::edgewise_subdivision;
use super::prism::prism_simplices;
use super::simplex::{Simplex, Triangulation};
use crate::arith::{to_q_vec, Q};
use crate::builtin::{ordered_vertices, p_polytope};
use crate::error::{Error, Result};
use crate::lattice::hull::{Hull, Ineq};
use crate::lattice::LatticeSpace;

#[derive(Clone, Debug)]
pub struct FacetTriangulation {
    /// "U1", "V4" or "C1,4".
    pub name: String,
    /// Facet inequality of P in intrinsic coordinates.
    pub facet: Ineq,
    /// Positions in the order u₁..u₆, v₁..v₆.
    pub vertices: Vec<usize>,
    pub triangulation: Triangulation,
}

#[derive(Clone, Debug)]
pub struct TauP {
    pub facets: Vec<FacetTriangulation>,
    pub boundary: Triangulation,
    pub triangulation: Triangulation,
}

fn ordered_points() -> Vec<Vec<Q>> {
    ordered_vertices().iter().map(|v| to_q_vec(&v.intrinsic())).collect()
}

fn simplex_of(pts: &[Vec<Q>], idx: &[usize]) -> Result<Simplex> {
    Simplex::new(LatticeSpace::N, idx.iter().map(|&i| pts[i].clone()).collect())
}

/// Triangulates one facet of P from its vertex positions.
pub fn facet_triangulation(vertices: &[usize]) -> Result<(String, Triangulation)> {
    let pts = ordered_points();
    let us: Vec<usize> = vertices.iter().copied().filter(|&i| i < 6).collect();
    let vs: Vec<usize> = vertices.iter().copied().filter(|&i| i >= 6).collect();
    let missing = |have: &[usize], off: usize| -> Vec<usize> { (0..6).filter(|k| !have.contains(&(k + off))).collect() };
    match (us.len(), vs.len()) {
        (5, 0) => {
            let name = format!("U{}", missing(&us, 0)[0] + 1);
            Ok((name, edgewise_subdivision(&simplex_of(&pts, &us)?, 3)?))
        }
        (0, 5) => {
            let name = format!("V{}", missing(&vs, 6)[0] + 1);
            Ok((name, edgewise_subdivision(&simplex_of(&pts, &vs)?, 3)?))
        }
        (4, 4) if missing(&us, 0) == missing(&vs, 6) => {
            let m = missing(&us, 0);
            let name = format!("C{},{}", m[0] + 1, m[1] + 1);
            let delta = simplex_of(&pts, &us)?;
            let w: Vec<Q> = pts[vs[0]].iter().zip(&pts[us[0]]).map(|(a, b)| a - b).collect();
            let esd = edgewise_subdivision(&delta, 3)?;
            let mut cells = Vec::new();
            for s in esd.all_simplices() {
                cells.extend(prism_simplices(&s, &s.translate(&w))?);
            }
            Ok((name, Triangulation::from_simplices(LatticeSpace::N, &cells)))
        }
        _ => Err(Error::Subdivision(format!("unrecognized facet with vertices {vertices:?}"))),
    }
}

/// Facet triangulations of ∂P, in the facet order of P's hull.
pub fn facet_triangulations() -> Result<Vec<FacetTriangulation>> {
    let p = p_polytope();
    let hull = p.hull();
    let order = ordered_points();
    let pos: Vec<usize> =
        p.vertices().iter().map(|v| order.iter().position(|o| o == v).expect("vertex of P is a uᵢ or vⱼ")).collect();
    hull.facets
        .par_iter()
        .zip(&hull.incidence)
        .map(|(f, inc)| {
            let mut vertices: Vec<usize> = inc.iter().map(|&k| pos[k]).collect();
            vertices.sort_unstable();
            let (name, triangulation) = facet_triangulation(&vertices)?;
            Ok(FacetTriangulation { name, facet: f.clone(), vertices, triangulation })
        })
        .collect()
}

/// Top-dimensional cells that `t` induces on the face cut out by `g`.
fn restriction(t: &Triangulation, g: &Ineq, dim: usize) -> BTreeSet<Vec<Vec<Q>>> {
    t.all_simplices()
        .into_iter()
        .filter_map(|s| {
            let mut face: Vec<Vec<Q>> = s.vertices.into_iter().filter(|v| g.eval(v).is_zero()).collect();
            face.sort();
            (face.len() == dim + 1).then_some(face)
        })
        .collect()
}

/// Checks that every two facet triangulations agree on the face they share.
pub fn check_gluing(facets: &[FacetTriangulation]) -> Result<()> {
    let pts = ordered_points();
    let pairs: Vec<(usize, usize)> =
        (0..facets.len()).flat_map(|a| (a + 1..facets.len()).map(move |b| (a, b))).collect();
    pairs.par_iter().try_for_each(|&(a, b)| {
        let (fa, fb) = (&facets[a], &facets[b]);
        let shared: Vec<Vec<Q>> =
            fa.vertices.iter().filter(|v| fb.vertices.contains(v)).map(|&v| pts[v].clone()).collect();
        if shared.is_empty() {
            return Ok(());
        }
        let dim = Hull::new(&shared, LatticeSpace::N.rank()).dim;
        let ra = restriction(&fa.triangulation, &fb.facet, dim);
        let rb = restriction(&fb.triangulation, &fa.facet, dim);
        match ra.symmetric_difference(&rb).next() {
            None => Ok(()),
            Some(cell) => {
                let t = if ra.contains(cell) { &fa.triangulation } else { &fb.triangulation };
                let simplex = cell.iter().map(|p| t.points.binary_search(p).expect("cell point")).collect();
                Err(Error::Gluing { a: fa.name.clone(), b: fb.name.clone(), simplex })
            }
        }
    })
}

/// For every facet F, the maximal cells of the glued boundary lying in F
/// are exactly the cells of τ(F). Returns the names of facets that differ.
pub fn facet_restriction_mismatches(facets: &[FacetTriangulation], boundary: &Triangulation) -> Vec<String> {
    let cells = boundary.cells();
    facets
        .iter()
        .filter(|f| {
            let inside: BTreeSet<Vec<Vec<Q>>> =
                cells.iter().filter(|c| c.iter().all(|v| f.facet.eval(v).is_zero())).cloned().collect();
            inside != f.triangulation.cells()
        })
        .map(|f| f.name.clone())
        .collect()
}

pub fn build_tau_p() -> Result<TauP> {
    let facets = facet_triangulations()?;
    check_gluing(&facets)?;
    let boundary_cells: Vec<Simplex> = facets.iter().flat_map(|f| f.triangulation.all_simplices()).collect();
    let boundary = Triangulation::from_simplices(LatticeSpace::N, &boundary_cells);
    let origin = vec![Q::zero(); LatticeSpace::N.rank()];
    let coned: Vec<Simplex> = boundary
        .all_simplices()
        .into_iter()
        .map(|s| Simplex { space: s.space, vertices: std::iter::once(origin.clone()).chain(s.vertices).collect() })
        .collect();
    let triangulation = Triangulation::from_simplices(LatticeSpace::N, &coned);
    Ok(TauP { facets, boundary, triangulation })
}
