use super::simplex::Triangulation;
use crate::arith::to_i64;
use crate::error::{Error, Result};
use crate::lattice::{Cone, Fan, LatticeVector};

/// Face fan of a star triangulation: one cone per maximal simplex, spanned
/// by its nonzero vertices.
pub fn fan_from_star_triangulation(t: &Triangulation) -> Result<Fan> {
    if !t.is_star() {
        return Err(Error::NotStar);
    }
    let origin = t.origin_index();
    let cones = t
        .simplices
        .iter()
        .map(|s| {
            let gens = s
                .iter()
                .filter(|&&k| Some(k) != origin)
                .map(|&k| {
                    let c: Option<Vec<i64>> = t.points[k].iter().map(to_i64).collect();
                    c.map(|c| LatticeVector::from_intrinsic(t.space, &c))
                        .ok_or_else(|| Error::Subdivision("non-lattice vertex".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Cone::new(t.space, &gens)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::new(t.space, &cones))
}

/// Indices of maximal cones that are not unimodular.
pub fn non_unimodular_cones(f: &Fan) -> Vec<usize> {
    (0..f.len()).filter(|&i| !f.cone(i).is_unimodular()).collect()
}
