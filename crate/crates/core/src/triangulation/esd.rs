//! Edgewise subdivision via color schemes.

use itertools::Itertools;

use super::simplex::{Simplex, Triangulation};
use crate::arith::Q;
use crate::error::{Error, Result};

/// A k×(d+1) color scheme, determined by one dividing row per column gap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorScheme {
    /// `dividers[j]` is the row (0-based) whose gap after column j is cut.
    pub dividers: Vec<usize>,
    pub matrix: Vec<Vec<usize>>,
}

impl ColorScheme {
    pub fn new(k: usize, dividers: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Subdivision("k must be positive".into()));
        }
        if let Some(&r) = dividers.iter().find(|&&r| r >= k) {
            return Err(Error::Subdivision(format!("divider row {r} out of range")));
        }
        let d = dividers.len();
        let mut matrix = vec![vec![0; d + 1]; k];
        let mut value = 0;
        for (row, line) in matrix.iter_mut().enumerate() {
            for (col, cell) in line.iter_mut().enumerate() {
                *cell = value;
                if col < d && dividers[col] == row {
                    value += 1;
                }
            }
        }
        Ok(ColorScheme { dividers, matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.len()
    }

    pub fn d(&self) -> usize {
        self.dividers.len()
    }

    /// Column multisets χ, top to bottom (nondecreasing).
    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..=self.d()).map(|c| self.matrix.iter().map(|r| r[c]).collect()).collect()
    }
}

/// All kᵈ color schemes, ordered lexicographically by divider rows.
pub fn color_schemes(k: usize, d: usize) -> Result<Vec<ColorScheme>> {
    if k == 0 {
        return Err(Error::Subdivision("k must be positive".into()));
    }
    if d == 0 {
        return Ok(vec![ColorScheme::new(k, vec![])?]);
    }
    (0..d).map(|_| 0..k).multi_cartesian_product().map(|dv| ColorScheme::new(k, dv)).collect()
}

/// p_χ = (p_{χ₁} + … + p_{χ_k}) / k.
pub fn chi_point(s: &Simplex, chi: &[usize]) -> Vec<Q> {
    let k = Q::from_integer(chi.len().into());
    let n = s.vertices[0].len();
    (0..n).map(|i| chi.iter().map(|&c| s.vertices[c][i].clone()).sum::<Q>() / &k).collect()
}

pub fn scheme_simplex(s: &Simplex, scheme: &ColorScheme) -> Simplex {
    Simplex { space: s.space, vertices: scheme.columns().iter().map(|chi| chi_point(s, chi)).collect() }
}

pub fn edgewise_subdivision(s: &Simplex, k: usize) -> Result<Triangulation> {
    let schemes = color_schemes(k, s.dim())?;
    let simplices: Vec<Simplex> = schemes.iter().map(|c| scheme_simplex(s, c)).collect();
    Ok(Triangulation::from_simplices(s.space, &simplices))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_scheme() {
        // Cuts: row 1 after column 0, row 3 after column 1, row 2 after columns 2 and 3.
        let c = ColorScheme::new(3, vec![0, 2, 1, 1]).unwrap();
        assert_eq!(c.matrix, vec![vec![0, 1, 1, 1, 1], vec![1, 1, 1, 2, 3], vec![3, 3, 4, 4, 4]]);
        assert_eq!(c.columns(), vec![vec![0, 1, 3], vec![1, 1, 3], vec![1, 1, 4], vec![1, 2, 4], vec![1, 3, 4]]);
    }

    #[test]
    fn scheme_count() {
        assert_eq!(color_schemes(3, 4).unwrap().len(), 81);
        assert_eq!(color_schemes(2, 3).unwrap().len(), 8);
        assert!(color_schemes(0, 2).is_err());
    }
}
