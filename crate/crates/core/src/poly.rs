//! Univariate polynomials over `Q`: Sturm sequences, real root isolation and
//! a small-degree irreducibility test.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order, no trailing zeros. The zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lead = d.lead();
        if r.len() <= dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.0.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Poly {
        let l = self.lead();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.squarefree_part().sturm_chain();
        let lo = sign_changes(chain.iter().map(|p| sign_at_neg_inf(p)));
        let hi = sign_changes(chain.iter().map(|p| p.lead().signum_i8()));
        lo - hi
    }

    /// Number of distinct real roots strictly greater than `c`.
    pub fn count_roots_above(&self, c: &BigRational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut p = self.squarefree_part();
        if p.eval(c).is_zero() {
            let lin = Poly::new(vec![-c.clone(), BigRational::one()]);
            p = p.div_rem(&lin).0;
            if p.degree().unwrap_or(0) == 0 {
                return 0;
            }
        }
        let chain = p.sturm_chain();
        let at_c = sign_changes(chain.iter().map(|q| q.eval(c).signum_i8()));
        let hi = sign_changes(chain.iter().map(|q| q.lead().signum_i8()));
        at_c - hi
    }

    /// Disjoint open intervals `(lo, hi)` isolating every real root, in
    /// increasing order, with the polynomial nonzero of opposite signs at
    /// the endpoints.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        let p = self.squarefree_part();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let lead = p.lead();
        let bound = p
            .0
            .iter()
            .map(|c| (c / &lead).abs())
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
            + BigRational::one();
        let chain = p.sturm_chain();
        let v = |x: &BigRational| sign_changes(chain.iter().map(|q| q.eval(x).signum_i8()));
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = v(&lo) - v(&hi);
            if n == 0 {
                continue;
            }
            if n == 1 && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
                out.push((lo, hi));
                continue;
            }
            let mut mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let mut nudge = BigInt::from(3);
            while p.eval(&mid).is_zero() {
                mid = &lo + (&hi - &lo) / BigRational::from_integer(nudge.clone());
                nudge += 1;
            }
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Halve an isolating interval.
    pub fn refine(&self, iv: &(BigRational, BigRational)) -> (BigRational, BigRational) {
        let (lo, hi) = iv;
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        let fm = self.eval(&mid);
        if fm.is_zero() {
            let eps = (hi - lo) / BigRational::from_integer(BigInt::from(1024));
            return (&mid - &eps, &mid + &eps);
        }
        if fm.signum_i8() == self.eval(lo).signum_i8() {
            (mid, hi.clone())
        } else {
            (lo.clone(), mid)
        }
    }
}

trait Signum {
    fn signum_i8(&self) -> i8;
}

impl Signum for BigRational {
    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

fn sign_at_neg_inf(p: &Poly) -> i8 {
    let s = p.lead().signum_i8();
    if p.degree().unwrap_or(0) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Irreducibility over `Q` of a monic integer polynomial of degree at most
/// four. Returns `None` above degree four.
pub fn is_irreducible_monic_small(coeffs: &[BigInt]) -> Option<bool> {
    let deg = coeffs.len().checked_sub(1)?;
    if deg > 4 {
        return None;
    }
    if deg == 0 {
        return Some(false);
    }
    if deg == 1 {
        return Some(true);
    }
    let c0 = &coeffs[0];
    if c0.is_zero() {
        return Some(false);
    }
    let p = Poly::from_ints(coeffs);
    // Rational roots of a monic integer polynomial are integer divisors of c0.
    for d in divisors(c0) {
        for s in [d.clone(), -d] {
            if p.eval(&BigRational::from_integer(s)).is_zero() {
                return Some(false);
            }
        }
    }
    if deg <= 3 {
        return Some(true);
    }
    // (x^2 + a x + b)(x^2 + c x + e), b e = c0.
    let (c1, c2, c3) = (&coeffs[1], &coeffs[2], &coeffs[3]);
    for d in divisors(c0) {
        for b in [d.clone(), -d] {
            let e = c0 / &b;
            if b != e {
                // a + c = c3, a e + b c = c1 => a (e - b) = c1 - b c3
                let num = c1 - &b * c3;
                let den = &e - &b;
                if num.is_multiple_of(&den) {
                    let a = &num / &den;
                    let c = c3 - &a;
                    if &b + &e + &a * &c == *c2 {
                        return Some(false);
                    }
                }
            } else if *c1 == &b * c3 {
                // a + c = c3, a c = c2 - 2b
                let disc = c3 * c3 - BigInt::from(4) * (c2 - BigInt::from(2) * &b);
                if crate::arith::is_square(&disc) {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    use num_traits::ToPrimitive;
    let m = n.magnitude();
    let mut out = Vec::new();
    if let Some(m) = m.to_u64() {
        let mut d = 1u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(BigInt::from(d));
                if d * d != m {
                    out.push(BigInt::from(m / d));
                }
            }
            d += 1;
        }
    } else {
        let f = crate::arith::factor(m);
        let mut ds = vec![num_bigint::BigUint::one()];
        for (p, e) in f.primes.iter() {
            let mut next = Vec::new();
            for d in ds.iter() {
                let mut pk = num_bigint::BigUint::one();
                for _ in 0..=*e {
                    next.push(d * &pk);
                    pk *= p;
                }
            }
            ds = next;
        }
        for u in f.unfactored.iter() {
            let mut next = Vec::new();
            for d in ds.iter() {
                next.push(d.clone());
                next.push(d * u);
            }
            ds = next;
        }
        out = ds.into_iter().map(BigInt::from).collect();
    }
    out
}

/// Characteristic polynomial of the multiplication-by-`a` matrix, built by
/// interpolating `det(t I - M)` at `n + 1` integer points.
pub fn characteristic_poly(m: &crate::linalg::IntMatrix) -> Poly {
    let n = m.len();
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|t| {
            let shifted: crate::linalg::IntMatrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { t - &m[i][j] } else { -&m[i][j] })
                        .collect()
                })
                .collect();
            crate::linalg::determinant(&shifted)
        })
        .collect();
    interpolate(&points, &values)
}

fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Poly {
    let mut acc = Poly(Vec::new());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::new(vec![BigRational::one()]);
        let mut denom = BigInt::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::new(vec![
                    BigRational::from_integer(-xj.clone()),
                    BigRational::one(),
                ]));
                denom *= xi - xj;
            }
        }
        let scale = BigRational::new(yi.clone(), denom);
        let term = Poly::new(basis.0.iter().map(|c| c * &scale).collect());
        acc = Poly::new({
            let n = acc.0.len().max(term.0.len());
            let z = BigRational::zero();
            (0..n)
                .map(|k| acc.0.get(k).unwrap_or(&z) + term.0.get(k).unwrap_or(&z))
                .collect()
        });
    }
    acc
}

/// `P(s)` with `P(t^2) = f(t) f(-t)`; its roots are the squares of the
/// roots of `f`.
pub fn square_roots_poly(f: &Poly) -> Poly {
    let z = BigRational::zero();
    let even: Vec<BigRational> = f.0.iter().step_by(2).cloned().collect();
    let odd: Vec<BigRational> = f.0.iter().skip(1).step_by(2).cloned().collect();
    let e = Poly::new(even);
    let o = Poly::new(odd);
    // f(t) f(-t) = E(s)^2 - s O(s)^2
    let o2 = o.mul(&o);
    let mut shifted = vec![z];
    shifted.extend(o2.0.iter().cloned());
    e.mul(&e).sub(&Poly::new(shifted))
}
