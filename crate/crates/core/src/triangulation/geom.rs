//! Integer affine geometry for simplices in projected coordinates.

use num_traits::ToPrimitive;

use crate::arith::{det_i64, Z};

/// Oriented hyperplane ⟨n, x⟩ ≥ c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub normal: Vec<i128>,
    pub offset: i128,
}

impl Plane {
    pub fn side(&self, x: &[i64]) -> i128 {
        self.normal.iter().zip(x).map(|(n, &v)| n * v as i128).sum::<i128>() - self.offset
    }
}

/// Hyperplane through d points of ℤᵈ (normal from signed maximal minors).
pub fn plane_through(points: &[&[i64]]) -> Plane {
    let d = points[0].len();
    let base = points[0];
    let rows: Vec<Vec<i64>> =
        points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let normal: Vec<i128> = (0..d)
        .map(|i| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| *v).collect()).collect();
            let m = if minor.is_empty() { Z::from(1) } else { det_i64(&minor) };
            let m = m.to_i128().expect("minor fits in 128 bits");
            if i % 2 == 0 { m } else { -m }
        })
        .collect();
    let offset = normal.iter().zip(base).map(|(n, &v)| n * v as i128).sum();
    Plane { normal, offset }
}

/// The facet planes of a full-dimensional simplex, oriented inward;
/// entry a is opposite vertex a.
pub fn facet_planes(vertices: &[&[i64]]) -> Vec<Plane> {
    (0..vertices.len())
        .map(|a| {
            let others: Vec<&[i64]> = vertices.iter().enumerate().filter(|(i, _)| *i != a).map(|(_, v)| *v).collect();
            let mut p = plane_through(&others);
            if p.side(vertices[a]) < 0 {
                p.normal.iter_mut().for_each(|v| *v = -*v);
                p.offset = -p.offset;
            }
            p
        })
        .collect()
}

/// Signed determinant of the edge vectors x_i − x_0 (d! × volume).
pub fn simplex_det(vertices: &[&[i64]]) -> Z {
    let base = vertices[0];
    let rows: Vec<Vec<i64>> =
        vertices[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    if rows.is_empty() {
        return Z::from(1);
    }
    det_i64(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_planes_point_inward() {
        let v: [&[i64]; 3] = [&[0, 0], &[2, 0], &[0, 2]];
        let planes = facet_planes(&v);
        assert!(planes.iter().all(|p| p.side(&[1, 1]) >= 0));
        assert!(planes.iter().any(|p| p.side(&[3, 3]) < 0));
        assert_eq!(simplex_det(&v), Z::from(4));
    }
}
