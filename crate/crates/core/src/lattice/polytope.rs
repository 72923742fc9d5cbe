use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::dd::pointed_rays;
use super::hull::Hull;
use super::vector::{LatticeSpace, LatticeVector};
use crate::arith::{fmt_q, integral_direction, q, to_i64, to_q_vec, z_to_i64, Q, Z};
use crate::error::{Error, Result};

/// ⟨normal, x⟩ + offset ≥ 0, with `normal` in the dual lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: LatticeVector,
    pub offset: i64,
}

impl Halfspace {
    pub fn eval(&self, x: &[Q]) -> Q {
        let n = self.normal.intrinsic();
        n.iter().zip(x).fold(q(self.offset), |s, (&a, x)| s + q(a) * x)
    }
}

/// A convex polytope given by an irredundant vertex list in intrinsic
/// rational coordinates, optionally with a facet description.
#[derive(Clone, Debug)]
pub struct Polytope {
    space: LatticeSpace,
    vertices: Vec<Vec<Q>>,
    halfspaces: Option<Vec<Halfspace>>,
    hull: OnceLock<Hull>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

pub fn ambient_q(space: LatticeSpace, v: &[Q]) -> Vec<Q> {
    let mut out = v.to_vec();
    match space {
        LatticeSpace::N => out.push(-v.iter().fold(Q::zero(), |s, x| s + x)),
        LatticeSpace::M => out.push(Q::zero()),
        LatticeSpace::Free(_) => {}
    }
    out
}

impl Polytope {
    /// Convex hull of the given points (intrinsic coordinates).
    pub fn from_points(space: LatticeSpace, points: &[Vec<Q>]) -> Polytope {
        let hull = Hull::new(points, space.rank());
        let mut vertices: Vec<Vec<Q>> = hull.vertices.iter().map(|&i| points[i].clone()).collect();
        vertices.sort();
        Polytope { space, vertices, halfspaces: None, hull: OnceLock::new() }
    }

    pub fn from_lattice(points: &[LatticeVector]) -> Polytope {
        let space = points.first().map(LatticeVector::space).expect("nonempty point list");
        let pts: Vec<Vec<Q>> = points.iter().map(|p| to_q_vec(&p.intrinsic())).collect();
        Self::from_points(space, &pts)
    }

    pub fn point(space: LatticeSpace) -> Polytope {
        Self::from_points(space, &[vec![Q::zero(); space.rank()]])
    }

    pub fn empty(space: LatticeSpace) -> Polytope {
        Polytope { space, vertices: vec![], halfspaces: Some(vec![]), hull: OnceLock::new() }
    }

    /// Intersection of halfspaces, converted to vertices by double
    /// description on the homogenized cone.
    pub fn from_halfspaces(space: LatticeSpace, hs: &[Halfspace]) -> Result<Polytope> {
        let d = space.rank();
        let mut rows: Vec<Vec<Z>> = hs
            .iter()
            .map(|h| {
                let mut r: Vec<Z> = h.normal.intrinsic().into_iter().map(Z::from).collect();
                r.push(Z::from(h.offset));
                r
            })
            .collect();
        let mut t = vec![Z::zero(); d + 1];
        t[d] = Z::one();
        rows.push(t);
        let qa: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
        if crate::arith::rank_q(&qa) < d + 1 {
            return Err(Error::Unbounded);
        }
        let rays = pointed_rays(&rows, d + 1);
        let mut vertices = Vec::new();
        for r in rays {
            if r[d].is_zero() {
                return Err(Error::Unbounded);
            }
            let t = Q::from_integer(r[d].clone());
            vertices.push(r[..d].iter().map(|x| Q::from_integer(x.clone()) / &t).collect::<Vec<Q>>());
        }
        let mut p = Self::from_points(space, &vertices);
        p.halfspaces = Some(hs.to_vec());
        Ok(p)
    }

    pub fn space(&self) -> LatticeSpace {
        self.space
    }

    /// Vertices in intrinsic coordinates, sorted.
    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn vertices_ambient(&self) -> Vec<Vec<Q>> {
        self.vertices.iter().map(|v| ambient_q(self.space, v)).collect()
    }

    pub fn halfspaces(&self) -> Option<&[Halfspace]> {
        self.halfspaces.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices
            .iter()
            .map(|v| {
                let c: Option<Vec<i64>> = v.iter().map(to_i64).collect();
                c.map(|c| LatticeVector::from_intrinsic(self.space, &c))
            })
            .collect()
    }

    pub fn hull(&self) -> &Hull {
        self.hull.get_or_init(|| Hull::new(&self.vertices, self.space.rank()))
    }

    pub fn dim(&self) -> Option<usize> {
        (!self.is_empty()).then(|| self.hull().dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.space.rank())
    }

    /// Facet inequalities of a full-dimensional polytope, scaled primitive.
    pub fn facets(&self) -> Result<Vec<Halfspace>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: self.dim().unwrap_or(0), rank: self.space.rank() });
        }
        let dual = self.space.dual();
        self.hull()
            .facets
            .iter()
            .map(|f| {
                let a = z_to_i64(&f.a)?;
                let b = z_to_i64(std::slice::from_ref(&f.b))?[0];
                Ok(Halfspace { normal: LatticeVector::from_intrinsic(dual, &a), offset: b })
            })
            .collect()
    }

    /// Vertex indices on each facet, aligned with [`Polytope::facets`].
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.hull().incidence.clone()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.hull().contains(x)
    }

    pub fn contains_lattice(&self, v: &LatticeVector) -> bool {
        v.space() == self.space && self.contains(&to_q_vec(&v.intrinsic()))
    }

    pub fn contains_origin_strictly(&self) -> bool {
        self.is_full_dimensional() && self.hull().contains_strictly_relative(&vec![Q::zero(); self.space.rank()])
    }

    pub fn translate(&self, t: &[Q]) -> Polytope {
        let pts: Vec<Vec<Q>> =
            self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        Self::from_points(self.space, &pts)
    }
}

/// The polar dual together with a reflexivity flag.
#[derive(Clone, Debug)]
pub struct DualPolytope {
    pub polytope: Polytope,
    pub reflexive: bool,
}

/// P^∨ = {m : ⟨x, m⟩ ≥ −1 for all x ∈ P}.
pub fn dual_polytope(p: &Polytope) -> Result<DualPolytope> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional { dim: p.dim().unwrap_or(0), rank: p.space().rank() });
    }
    if let Some(f) = p.hull().facets.iter().find(|f| !f.b.is_positive()) {
        return Err(Error::OriginNotInterior { witness: f.a.iter().map(|x| x.to_string()).collect() });
    }
    let dual = p.space().dual();
    // Scale each vertex to an integral normal: ⟨k·x, m⟩ + k ≥ 0.
    let hs: Vec<Halfspace> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut full = v.clone();
            full.push(Q::one());
            let z = z_to_i64(&integral_direction(&full)).expect("small coordinates");
            let (n, k) = z.split_at(z.len() - 1);
            Halfspace { normal: LatticeVector::from_intrinsic(dual, n), offset: k[0] }
        })
        .collect();
    let polytope = Polytope::from_halfspaces(dual, &hs)?;
    let reflexive = p.is_lattice() && polytope.is_lattice();
    Ok(DualPolytope { polytope, reflexive })
}

pub fn minkowski_sum(p: &Polytope, r: &Polytope) -> Result<Polytope> {
    if p.space() != r.space() {
        return Err(Error::Space("Minkowski summands live in different lattices".into()));
    }
    let mut pts = Vec::with_capacity(p.vertices().len() * r.vertices().len());
    for a in p.vertices() {
        for b in r.vertices() {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<Q>>());
        }
    }
    pts.sort();
    pts.dedup();
    Ok(Polytope::from_points(p.space(), &pts))
}

/// All lattice points, by bounding-box enumeration and exact membership.
pub fn lattice_points(p: &Polytope) -> Vec<LatticeVector> {
    if p.is_empty() {
        return vec![];
    }
    let d = p.space().rank();
    let lo: Vec<i64> = (0..d)
        .map(|i| to_i64(&p.vertices().iter().map(|v| v[i].floor()).min().unwrap()).unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| to_i64(&p.vertices().iter().map(|v| v[i].ceil()).max().unwrap()).unwrap())
        .collect();
    let hull = p.hull();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if hull.contains(&to_q_vec(&cur)) {
            out.push(LatticeVector::from_intrinsic(p.space(), &cur));
        }
        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                return out;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

pub fn fmt_point(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use proptest::prelude::*;

    fn free(v: &[&[i64]]) -> Polytope {
        let d = v[0].len();
        Polytope::from_points(LatticeSpace::Free(d), &v.iter().map(|p| to_q_vec(p)).collect::<Vec<_>>())
    }

    #[test]
    fn cross_polytope_dual_is_square() {
        let cross = free(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let d = dual_polytope(&cross).unwrap();
        assert!(d.reflexive);
        assert_eq!(d.polytope, free(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]));
    }

    #[test]
    fn non_reflexive_dual_has_rational_vertices() {
        let tri = free(&[&[2, 0], &[0, 2], &[-1, -1]]);
        let d = dual_polytope(&tri).unwrap();
        assert!(!d.reflexive);
        assert!(d.polytope.vertices().iter().flatten().any(|x| *x == qr(-1, 2)));
    }

    #[test]
    fn origin_on_boundary_is_rejected_with_witness() {
        let tri = free(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(dual_polytope(&tri), Err(Error::OriginNotInterior { .. })));
    }

    #[test]
    fn unit_segment_points() {
        let seg = free(&[&[0], &[1]]);
        let pts: Vec<Vec<i64>> = lattice_points(&seg).iter().map(|v| v.intrinsic()).collect();
        assert_eq!(pts, vec![vec![0], vec![1]]);
    }

    #[test]
    fn sum_with_origin_is_identity() {
        let sq = free(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        let zero = Polytope::point(LatticeSpace::Free(2));
        assert_eq!(minkowski_sum(&sq, &zero).unwrap(), sq);
    }

    proptest! {
        #[test]
        fn duality_is_involutive(a in 1i64..4, b in 1i64..4, c in 1i64..4, d in 1i64..4) {
            // A lattice quadrilateral with the origin strictly inside.
            let p = free(&[&[a, 0], &[0, b], &[-c, 0], &[0, -d]]);
            let dd = dual_polytope(&dual_polytope(&p).unwrap().polytope).unwrap().polytope;
            prop_assert_eq!(dd, p);
        }
    }
}
