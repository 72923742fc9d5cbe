//! Double description: extreme rays of {y : A y ≥ 0}.

use num_traits::{Signed, Zero};

use crate::arith::{integral_direction, kernel_q, primitive_z, rref, Q, Z};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn dot(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Generators of a polyhedral cone {y : A y ≥ 0}: extreme rays of its
/// pointed part plus a basis of its lineality space.
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<Z>>,
    pub lineality: Vec<Vec<Z>>,
}

pub fn cone_generators(rows: &[Vec<Z>], n: usize) -> ConeGenerators {
    let qa: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let lin = kernel_q(&qa, n);
    if lin.is_empty() {
        return ConeGenerators { rays: pointed_rays(rows, n), lineality: vec![] };
    }
    // Restrict to the row space, where the cone is pointed.
    let mut basis = qa.clone();
    let piv = rref(&mut basis);
    let w: Vec<Vec<Q>> = basis.into_iter().take(piv.len()).collect();
    let r = w.len();
    let projected: Vec<Vec<Z>> = qa
        .iter()
        .map(|row| {
            let v: Vec<Q> = w.iter().map(|wi| crate::arith::dot_q(row, wi)).collect();
            integral_direction(&v)
        })
        .collect();
    let zrays = if r == 0 { vec![] } else { pointed_rays(&projected, r) };
    let rays = zrays
        .iter()
        .map(|z| {
            let mut y = vec![Q::zero(); n];
            for (zi, wi) in z.iter().zip(&w) {
                for (yj, wij) in y.iter_mut().zip(wi) {
                    *yj += Q::from_integer(zi.clone()) * wij;
                }
            }
            integral_direction(&y)
        })
        .collect();
    ConeGenerators { rays, lineality: lin.iter().map(|l| integral_direction(l)).collect() }
}

/// Extreme rays of a pointed cone {y ∈ ℚⁿ : A y ≥ 0}; requires rank A = n.
pub fn pointed_rays(rows: &[Vec<Z>], n: usize) -> Vec<Vec<Z>> {
    let m = rows.len();
    // Pick n independent rows greedily.
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Q>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut cand = echelon.clone();
        cand.push(row.iter().map(|x| Q::from_integer(x.clone())).collect());
        if rref(&mut cand.clone()).len() > chosen.len() {
            chosen.push(i);
            echelon = cand;
            if chosen.len() == n {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), n, "pointed_rays needs a full-rank system");
    // Initial simplicial cone: columns of the inverse of the chosen rows.
    let mut rays: Vec<(Vec<Z>, Bits)> = Vec::new();
    for j in 0..n {
        let mut sys: Vec<Vec<Q>> = chosen
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let mut r: Vec<Q> = rows[i].iter().map(|x| Q::from_integer(x.clone())).collect();
                r.push(if k == j { Q::from_integer(1.into()) } else { Q::zero() });
                r
            })
            .collect();
        rref(&mut sys);
        let y: Vec<Q> = sys.iter().map(|r| r[n].clone()).collect();
        let y = integral_direction(&y);
        let mut tight = Bits::new(m);
        for (k, &i) in chosen.iter().enumerate() {
            if k != j {
                tight.set(i);
            }
        }
        rays.push((y, tight));
    }
    let mut processed: Vec<usize> = chosen.clone();
    for i in 0..m {
        if chosen.contains(&i) {
            continue;
        }
        let a = &rows[i];
        let vals: Vec<Z> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<(Vec<Z>, Bits)> = Vec::new();
        for k in 0..rays.len() {
            if !vals[k].is_negative() {
                let (r, t) = &rays[k];
                let mut t = t.clone();
                if vals[k].is_zero() {
                    t.set(i);
                }
                next.push((r.clone(), t));
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == q || !rays[k].1.contains(&common));
                if !adjacent {
                    continue;
                }
                let (rp, rq) = (&rays[p].0, &rays[q].0);
                let combo: Vec<Z> = rp
                    .iter()
                    .zip(rq)
                    .map(|(x, y)| &vals[p] * y - &vals[q] * x)
                    .collect();
                let mut t = common;
                t.set(i);
                next.push((primitive_z(&combo), t));
            }
        }
        processed.push(i);
        rays = next;
    }
    let mut out: Vec<Vec<Z>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}

/// True when every entry of `v` is zero.
pub fn is_zero_vec(v: &[Z]) -> bool {
    v.iter().all(Zero::is_zero)
}
