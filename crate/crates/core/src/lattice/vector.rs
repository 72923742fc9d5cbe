use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arith::{dot_i64, gcd_all};
use crate::error::{Error, Result};

/// The lattices in play. `N` is the sum-zero sublattice of ℤ⁶, `M` the
/// quotient ℤ⁶/ℤ(1,…,1); `Free(d)` is plain ℤᵈ, self-dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeSpace {
    N,
    M,
    Free(usize),
}

impl LatticeSpace {
    pub fn dual(self) -> Self {
        match self {
            Self::N => Self::M,
            Self::M => Self::N,
            Self::Free(d) => Self::Free(d),
        }
    }

    pub fn ambient_rank(self) -> usize {
        match self {
            Self::N | Self::M => 6,
            Self::Free(d) => d,
        }
    }

    /// Rank of the lattice, i.e. the length of intrinsic coordinates.
    pub fn rank(self) -> usize {
        match self {
            Self::N | Self::M => 5,
            Self::Free(d) => d,
        }
    }

    /// Intrinsic coordinates: drop the last ambient coordinate for N and M.
    /// For M this uses the canonical representative; the two coordinate
    /// systems are dual under the standard dot product.
    pub fn to_intrinsic(self, ambient: &[i64]) -> Vec<i64> {
        match self {
            Self::N | Self::M => ambient[..5].to_vec(),
            Self::Free(_) => ambient.to_vec(),
        }
    }

    pub fn to_ambient(self, intrinsic: &[i64]) -> Vec<i64> {
        match self {
            Self::N => {
                let mut v = intrinsic.to_vec();
                v.push(-intrinsic.iter().sum::<i64>());
                v
            }
            Self::M => {
                let mut v = intrinsic.to_vec();
                v.push(0);
                v
            }
            Self::Free(_) => intrinsic.to_vec(),
        }
    }

    pub fn label(self) -> String {
        match self {
            Self::N => "N".into(),
            Self::M => "M".into(),
            Self::Free(d) => format!("Z{d}"),
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "N" => Ok(Self::N),
            "M" => Ok(Self::M),
            _ => s
                .strip_prefix('Z')
                .and_then(|d| d.parse().ok())
                .map(Self::Free)
                .ok_or_else(|| Error::Parse(format!("unknown lattice {s:?}"))),
        }
    }
}

/// A lattice vector stored by its ambient coordinates; M-vectors always use
/// the representative whose last coordinate is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    space: LatticeSpace,
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(space: LatticeSpace, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != space.ambient_rank() {
            return Err(Error::Space(format!(
                "expected {} coordinates, got {}",
                space.ambient_rank(),
                coords.len()
            )));
        }
        match space {
            LatticeSpace::N if coords.iter().sum::<i64>() != 0 => Err(Error::NotSumZero { coords }),
            LatticeSpace::M => {
                let last = coords[5];
                Ok(Self { space, coords: coords.iter().map(|x| x - last).collect() })
            }
            _ => Ok(Self { space, coords }),
        }
    }

    pub fn n(coords: [i64; 6]) -> Self {
        Self::new(LatticeSpace::N, coords.to_vec()).expect("sum-zero coordinates")
    }

    pub fn m(coords: [i64; 6]) -> Self {
        Self::new(LatticeSpace::M, coords.to_vec()).expect("six coordinates")
    }

    pub fn free(coords: Vec<i64>) -> Self {
        Self { space: LatticeSpace::Free(coords.len()), coords }
    }

    /// Standard basis vector e_i (1-based) of M; for N use differences.
    pub fn e(space: LatticeSpace, i: usize) -> Self {
        let mut c = vec![0; space.ambient_rank()];
        c[i - 1] = 1;
        Self::new(space, c).expect("basis vector")
    }

    pub fn from_intrinsic(space: LatticeSpace, v: &[i64]) -> Self {
        Self { space, coords: space.to_ambient(v) }
    }

    pub fn space(&self) -> LatticeSpace {
        self.space
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn intrinsic(&self) -> Vec<i64> {
        self.space.to_intrinsic(&self.coords)
    }

    pub fn zero(space: LatticeSpace) -> Self {
        Self { space, coords: vec![0; space.ambient_rank()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// Pairing with a vector of the dual lattice.
    pub fn pair(&self, other: &LatticeVector) -> Result<i64> {
        if other.space != self.space.dual() {
            return Err(Error::Space(format!(
                "cannot pair {} with {}",
                self.space.label(),
                other.space.label()
            )));
        }
        Ok(dot_i64(&self.coords, &other.coords))
    }

    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.intrinsic()) == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.space, o.space);
        let c: Vec<i64> = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        Self::new(self.space, c).expect("closed under addition")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.space, self.coords.iter().map(|x| k * x).collect()).expect("closed under scaling")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sum_zero_is_enforced() {
        assert!(LatticeVector::new(LatticeSpace::N, vec![1, 0, 0, 0, 0, 0]).is_err());
        assert!(LatticeVector::new(LatticeSpace::N, vec![1, -1, 0, 0, 0, 0]).is_ok());
    }

    #[test]
    fn quotient_representative_has_zero_last_coordinate() {
        let v = LatticeVector::m([3, 4, 5, 6, 7, 8]);
        assert_eq!(v.coords(), &[-5, -4, -3, -2, -1, 0]);
        assert_eq!(v, LatticeVector::m([-5, -4, -3, -2, -1, 0]));
    }

    proptest! {
        #[test]
        fn pairing_ignores_diagonal_shift(
            n in proptest::collection::vec(-5i64..5, 5),
            m in proptest::collection::vec(-5i64..5, 6),
            k in -4i64..4,
        ) {
            let nv = LatticeVector::from_intrinsic(LatticeSpace::N, &n);
            let m1 = LatticeVector::new(LatticeSpace::M, m.clone()).unwrap();
            let shifted: Vec<i64> = m.iter().map(|x| x + k).collect();
            let m2 = LatticeVector::new(LatticeSpace::M, shifted).unwrap();
            prop_assert_eq!(nv.pair(&m1).unwrap(), nv.pair(&m2).unwrap());
            // intrinsic coordinates are dual under the plain dot product
            prop_assert_eq!(nv.pair(&m1).unwrap(), dot_i64(&nv.intrinsic(), &m1.intrinsic()));
        }
    }
}
