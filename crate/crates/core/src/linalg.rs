//! Dense exact linear algebra over `Z` and `Q`.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Fraction-free Gaussian elimination (Bareiss). Exact for any square
/// integer matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.clone();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Row Hermite normal form of the lattice spanned by `rows` in `Z^n`.
///
/// The result is lower triangular: row `i` has its positive pivot in column
/// `i` and zeros to the right, and every entry left of a pivot lies in
/// `[0, pivot of that column)`. Returns `None` when the rows do not span a
/// full-rank lattice.
pub fn hnf(rows: &[Vec<BigInt>], n: usize) -> Option<IntMatrix> {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for col in (0..n).rev() {
        // Combine all rows with a nonzero entry in `col` into one.
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for row in work.into_iter() {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (np, other) = gcd_combine(p, row, col);
                    pivot = Some(np);
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                }
            }
        }
        let mut p = pivot?;
        if p[col].is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
        basis[col] = Some(p);
        work = rest;
    }
    let mut out: IntMatrix = basis.into_iter().map(|r| r.unwrap()).collect();
    for i in 0..n {
        for j in (0..i).rev() {
            let q = out[i][j].div_floor(&out[j][j]);
            if !q.is_zero() {
                let rj = out[j].clone();
                for k in 0..=j {
                    out[i][k] -= &q * &rj[k];
                }
            }
        }
    }
    Some(out)
}

/// Unimodular combination of `a` and `b` leaving `gcd(a[col], b[col])` in the
/// first output and zero in column `col` of the second.
fn gcd_combine(a: Vec<BigInt>, b: Vec<BigInt>, col: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let eg = a[col].extended_gcd(&b[col]);
    let g = eg.gcd;
    let ua = &a[col] / &g;
    let ub = &b[col] / &g;
    let first: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| &eg.x * x + &eg.y * y).collect();
    let second: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| &ub * x - &ua * y).collect();
    (first, second)
}

/// Reduce `v` modulo the lattice with lower-triangular HNF basis `h`,
/// bringing each coordinate into `[0, h[i][i])`.
pub fn hnf_reduce(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for i in (0..h.len()).rev() {
        let q = v[i].div_floor(&h[i][i]);
        if !q.is_zero() {
            for k in 0..=i {
                v[k] -= &q * &h[i][k];
            }
        }
    }
    v
}

pub fn is_hnf(h: &IntMatrix) -> bool {
    let n = h.len();
    for i in 0..n {
        if h[i].len() != n || !h[i][i].is_positive() {
            return false;
        }
        for j in i + 1..n {
            if !h[i][j].is_zero() {
                return false;
            }
        }
        for j in 0..i {
            if h[i][j].is_negative() || h[i][j] >= h[j][j] {
                return false;
            }
        }
    }
    true
}

/// Rank of a matrix over `F_p`, `p` prime.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    use crate::arith::{inv_mod, mul_mod};
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = inv_mod(a[rank][col], p).unwrap_or(0);
        for j in 0..cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..cols {
                    let t = mul_mod(f, a[rank][j], p);
                    a[r][j] = (a[r][j] + p - t) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
