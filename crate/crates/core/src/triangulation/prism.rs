use super::simplex::{Simplex, Triangulation};
use crate::arith::{rank_q, Q};
use crate::error::{Error, Result};

/// Maximal simplices a_l = conv(p₀,…,p_l, q_l,…,q_d) of the prism over
/// two translated copies of an ordered simplex.
pub fn prism_simplices(lower: &Simplex, upper: &Simplex) -> Result<Vec<Simplex>> {
    if lower.vertices.len() != upper.vertices.len() || lower.vertices.is_empty() {
        return Err(Error::Subdivision("prism ends must have equal vertex counts".into()));
    }
    let diff = |a: &[Q], b: &[Q]| -> Vec<Q> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let w = diff(&upper.vertices[0], &lower.vertices[0]);
    if lower.vertices.iter().zip(&upper.vertices).any(|(p, q)| diff(q, p) != w) {
        return Err(Error::Subdivision("prism ends are not translates".into()));
    }
    let p0 = &lower.vertices[0];
    let mut dirs: Vec<Vec<Q>> = lower.vertices[1..].iter().map(|p| diff(p, p0)).collect();
    dirs.push(w);
    if rank_q(&dirs) != dirs.len() {
        return Err(Error::Subdivision("prism has zero height".into()));
    }
    let d = lower.dim();
    Ok((0..=d)
        .map(|l| Simplex {
            space: lower.space,
            vertices: lower.vertices[..=l].iter().chain(&upper.vertices[l..]).cloned().collect(),
        })
        .collect())
}

pub fn prism_subdivision(lower: &Simplex, upper: &Simplex) -> Result<Triangulation> {
    Ok(Triangulation::from_simplices(lower.space, &prism_simplices(lower, upper)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::to_q_vec;
    use crate::lattice::LatticeSpace;

    #[test]
    fn square_from_segment() {
        let s = Simplex::new(LatticeSpace::Free(2), vec![to_q_vec(&[0, 0]), to_q_vec(&[1, 0])]).unwrap();
        let t = prism_subdivision(&s, &s.translate(&to_q_vec(&[0, 1]))).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn flat_prism_rejected() {
        let s = Simplex::new(LatticeSpace::Free(2), vec![to_q_vec(&[0, 0]), to_q_vec(&[1, 0])]).unwrap();
        assert!(prism_subdivision(&s, &s.translate(&to_q_vec(&[2, 0]))).is_err());
    }
}
