//! Exact integer and rational helpers: parsing, formatting, determinants,
//! row reduction, kernels and integer column echelon forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().map_err(|_| bad())?;
            let d: Z = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries; zero vectors are returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn primitive_z(v: &[Z]) -> Vec<Z> {
    let g = v.iter().fold(Z::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

/// Clears denominators of a rational vector and makes it primitive.
pub fn integral_direction(v: &[Q]) -> Vec<Z> {
    let l = v.iter().fold(Z::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Z> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    primitive_z(&ints)
}

pub fn z_to_i64(v: &[Z]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.to_string())))
        .collect()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

pub fn to_q_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det_i64(m: &[Vec<i64>]) -> Z {
    let n = m.len();
    if n == 0 {
        return Z::one();
    }
    if let Some(d) = det_i128(m) {
        return d.into();
    }
    let mut a: Vec<Vec<Z>> = m.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect();
    det_bareiss(&mut a)
}

fn det_i128(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let p = (k + 1..n).find(|&i| a[i][k] != 0)?;
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

pub fn det_bareiss(a: &mut [Vec<Z>]) -> Z {
    let n = a.len();
    let mut sign = Z::one();
    let mut prev = Z::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Z::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det_q(m: &[Vec<Q>]) -> Q {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        det *= &a[k][k];
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    let a: Vec<Vec<Q>> = m.iter().map(|r| to_q_vec(r)).collect();
    rank_q(&a)
}

/// Basis of the right kernel {x : A x = 0} over the rationals.
pub fn kernel_q(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of A x = b, or None when inconsistent.
pub fn solve_q(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

/// Integer column echelon form: returns (H, U) with A·U = H, U unimodular,
/// H lower-staircase. The trailing columns of U past `rank` span the
/// integer kernel of A.
pub fn column_echelon(m: &[Vec<i64>], cols: usize) -> (Vec<Vec<Z>>, Vec<Vec<Z>>, usize) {
    let rows = m.len();
    let mut h: Vec<Vec<Z>> = m.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect();
    let mut u: Vec<Vec<Z>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let col_op = |mat: &mut Vec<Vec<Z>>, dst: usize, src: usize, f: &Z| {
        for row in mat.iter_mut() {
            let t = &row[src] * f;
            row[dst] -= t;
        }
    };
    let swap_cols = |mat: &mut Vec<Vec<Z>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };
    let mut piv = 0;
    for r in 0..rows {
        if piv == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (piv..cols).filter(|&c| !h[r][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&c| h[r][c].abs()).unwrap();
            swap_cols(&mut h, piv, best);
            swap_cols(&mut u, piv, best);
            let mut done = true;
            for c in piv + 1..cols {
                if !h[r][c].is_zero() {
                    let f = h[r][c].div_floor(&h[r][piv]);
                    col_op(&mut h, c, piv, &f);
                    col_op(&mut u, c, piv, &f);
                    if !h[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                if h[r][piv].is_negative() {
                    for row in h.iter_mut() {
                        row[piv] = -row[piv].clone();
                    }
                    for row in u.iter_mut() {
                        row[piv] = -row[piv].clone();
                    }
                }
                piv += 1;
                break;
            }
        }
    }
    (h, u, piv)
}

/// A lattice basis of {x ∈ ℤⁿ : A x = 0}.
pub fn integer_kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<Z>> {
    let (_, u, rank) = column_echelon(m, cols);
    (rank..cols).map(|c| u.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn binomial(n: u64, k: u64) -> Z {
    if k > n {
        return Z::zero();
    }
    (0..k).fold(Z::one(), |acc, i| acc * Z::from(n - i) / Z::from(i + 1))
}

pub fn factorial(n: u64) -> Z {
    (1..=n).fold(Z::one(), |acc, i| acc * Z::from(i))
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-5/12"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/8").unwrap()), "1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn determinants_agree() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det_i64(&m), Z::from(4));
        let mq: Vec<Vec<Q>> = m.iter().map(|r| to_q_vec(r)).collect();
        assert_eq!(det_q(&mq), q(4));
        let big = vec![vec![i64::MAX / 2, 1], vec![3, i64::MAX / 2]];
        let expect = Z::from(i64::MAX / 2) * Z::from(i64::MAX / 2) - Z::from(3);
        assert_eq!(det_i64(&big), expect);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2,-1), not (4,-2).
        let k = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(k.len(), 1);
        let v = z_to_i64(&k[0]).unwrap();
        assert_eq!(primitive(&v), v);
        assert_eq!(2 * v[0] + 4 * v[1], 0);
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(sqrt_q(&qr(9, 4)), Some(qr(3, 2)));
        assert_eq!(sqrt_q(&q(2)), None);
        assert_eq!(sqrt_q(&q(-4)), None);
    }
}
