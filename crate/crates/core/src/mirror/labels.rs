use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::builtin::{u3, v3};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RayKind {
    U,
    V,
}

/// u_{ijk} or v_{ijk} with 1 ≤ i ≤ j ≤ k ≤ 6, excluding u₁₂₃ and v₄₅₆.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayLabel {
    pub kind: RayKind,
    pub idx: [u8; 3],
}

impl RayLabel {
    pub fn new(kind: RayKind, mut idx: [u8; 3]) -> Result<Self> {
        idx.sort_unstable();
        if idx.iter().any(|&i| !(1..=6).contains(&i)) {
            return Err(Error::UnknownRay(format!("{idx:?}")));
        }
        let excluded = match kind {
            RayKind::U => [1, 2, 3],
            RayKind::V => [4, 5, 6],
        };
        if idx == excluded {
            return Err(Error::UnknownRay(format!("{kind:?}{idx:?} is the origin")));
        }
        Ok(RayLabel { kind, idx })
    }

    pub fn u(i: u8, j: u8, k: u8) -> Self {
        Self::new(RayKind::U, [i, j, k]).expect("valid u label")
    }

    pub fn v(i: u8, j: u8, k: u8) -> Self {
        Self::new(RayKind::V, [i, j, k]).expect("valid v label")
    }

    /// All 110 labels, u's first, multisets in lexicographic order.
    pub fn all() -> Vec<RayLabel> {
        let mut out = Vec::with_capacity(110);
        for kind in [RayKind::U, RayKind::V] {
            for i in 1..=6u8 {
                for j in i..=6 {
                    for k in j..=6 {
                        if let Ok(l) = Self::new(kind, [i, j, k]) {
                            out.push(l);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vector(&self) -> LatticeVector {
        let [i, j, k] = self.idx.map(usize::from);
        match self.kind {
            RayKind::U => u3(i, j, k),
            RayKind::V => v3(i, j, k),
        }
    }

    pub fn from_vector(v: &LatticeVector) -> Option<Self> {
        Self::all().into_iter().find(|l| &l.vector() == v)
    }

    /// φ_s: multiplicity of s among the indices.
    pub fn phi(&self, s: u8) -> i64 {
        self.idx.iter().filter(|&&i| i == s).count() as i64
    }
}

impl fmt::Display for RayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            RayKind::U => 'u',
            RayKind::V => 'v',
        };
        write!(f, "{c}{}{}{}", self.idx[0], self.idx[1], self.idx[2])
    }
}

impl FromStr for RayLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownRay(s.to_string());
        let mut ch = s.chars();
        let kind = match ch.next() {
            Some('u') => RayKind::U,
            Some('v') => RayKind::V,
            _ => return Err(bad()),
        };
        let digits: Vec<u8> = ch.map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect::<Result<_>>()?;
        let idx: [u8; 3] = digits.try_into().map_err(|_| bad())?;
        Self::new(kind, idx)
    }
}
