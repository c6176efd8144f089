use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::{AlgebraicInteger, FieldError, NumberField};
use crate::linalg::{self, IntMatrix};

/// Ramification data of a prime ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeData {
    pub residue_char: u64,
    pub e: u32,
    pub f: u32,
}

/// Full-rank sublattice of the ring of integers that is an ideal, stored
/// in canonical Hermite normal form over the integral basis.
///
/// Equality compares the HNF only.
#[derive(Clone, Debug)]
pub struct IntegralIdeal {
    hnf: IntMatrix,
    prime: Option<PrimeData>,
}

impl PartialEq for IntegralIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf
    }
}

impl Eq for IntegralIdeal {}

impl IntegralIdeal {
    /// Ideal generated by `gens`; zero generators are skipped.
    pub fn from_generators(k: &NumberField, gens: &[AlgebraicInteger]) -> Result<Self, FieldError> {
        let d = k.degree();
        let mut rows = Vec::with_capacity(gens.len() * d);
        for g in gens.iter().filter(|g| !g.is_zero()) {
            for j in 0..d {
                rows.push(k.mul(g, &k.basis_element(j)).0);
            }
        }
        if rows.is_empty() {
            return Err(FieldError::ZeroIdeal);
        }
        let hnf = linalg::hnf(&rows, d).ok_or(FieldError::ZeroIdeal)?;
        Ok(IntegralIdeal { hnf, prime: None })
    }

    /// Ideal from an HNF that must already be canonical.
    pub fn from_hnf(k: &NumberField, hnf: IntMatrix) -> Result<Self, String> {
        let d = k.degree();
        if hnf.len() != d || !linalg::is_hnf(&hnf) {
            return Err(String::from("matrix is not in Hermite normal form"));
        }
        let ideal = IntegralIdeal { hnf, prime: None };
        if !ideal.is_ideal(k) {
            return Err(String::from("lattice is not an ideal"));
        }
        Ok(ideal)
    }

    pub fn unit(k: &NumberField) -> Self {
        IntegralIdeal { hnf: linalg::identity(k.degree()), prime: None }
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn prime(&self) -> Option<&PrimeData> {
        self.prime.as_ref()
    }

    pub(crate) fn with_prime(mut self, data: PrimeData) -> Self {
        self.prime = Some(data);
        self
    }

    /// Index in the ring of integers.
    pub fn norm(&self) -> BigUint {
        let mut n = BigUint::one();
        for (i, row) in self.hnf.iter().enumerate() {
            n *= row[i].magnitude();
        }
        n
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn contains(&self, a: &AlgebraicInteger) -> bool {
        linalg::hnf_reduce(&self.hnf, &a.0).iter().all(|x| x.is_zero())
    }

    /// Reduced representative of `a` modulo the ideal.
    pub fn reduce(&self, a: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger(linalg::hnf_reduce(&self.hnf, &a.0))
    }

    /// Closure of the lattice under multiplication by the integral basis.
    pub fn is_ideal(&self, k: &NumberField) -> bool {
        self.hnf.iter().all(|row| {
            let r = AlgebraicInteger(row.clone());
            (0..k.degree()).all(|j| self.contains(&k.mul(&r, &k.basis_element(j))))
        })
    }

    /// `I + J`, the gcd of the two ideals.
    pub fn sum(&self, other: &IntegralIdeal) -> IntegralIdeal {
        let mut rows = self.hnf.clone();
        rows.extend(other.hnf.iter().cloned());
        let hnf = linalg::hnf(&rows, self.hnf.len()).expect("sum of full-rank lattices");
        IntegralIdeal { hnf, prime: None }
    }

    pub fn mul(&self, k: &NumberField, other: &IntegralIdeal) -> IntegralIdeal {
        let mut rows = Vec::with_capacity(self.hnf.len() * other.hnf.len());
        for a in self.hnf.iter() {
            let a = AlgebraicInteger(a.clone());
            for b in other.hnf.iter() {
                rows.push(k.mul(&a, &AlgebraicInteger(b.clone())).0);
            }
        }
        let hnf = linalg::hnf(&rows, k.degree()).expect("product of nonzero ideals");
        IntegralIdeal { hnf, prime: None }
    }

    pub fn pow(&self, k: &NumberField, mut exp: u64) -> IntegralIdeal {
        let mut acc = IntegralIdeal::unit(k);
        let mut base = IntegralIdeal { hnf: self.hnf.clone(), prime: None };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// `self | other`, i.e. `other` is contained in `self`.
    pub fn divides(&self, other: &IntegralIdeal) -> bool {
        other.hnf.iter().all(|row| self.contains(&AlgebraicInteger(row.clone())))
    }

    /// Exponent of this prime ideal in the factorization of `(a)`, `a != 0`.
    pub fn valuation(&self, k: &NumberField, a: &AlgebraicInteger) -> u32 {
        let n_a = k.element_norm(a).magnitude().clone();
        let n_p = self.norm();
        if n_a.is_zero() || n_p.is_one() {
            return 0;
        }
        let mut v = 0;
        let mut power = self.clone();
        let mut power_norm = n_p.clone();
        while power_norm <= n_a && power.contains(a) {
            v += 1;
            power = power.mul(k, self);
            power_norm *= &n_p;
        }
        v
    }

    /// Check that this ideal is a prime of residue characteristic `q` with
    /// the given ramification index and residue degree, and attach the data.
    pub fn verify_prime(self, k: &NumberField, q: u64, e: u32, f: u32) -> Result<IntegralIdeal, String> {
        if !crate::arith::is_prime_u64(q) {
            return Err(format!("residue_char {q} is not prime"));
        }
        if f == 0 || e == 0 {
            return Err(String::from("e and f must be positive"));
        }
        let qb = BigInt::from(q);
        if !self.contains(&k.from_int(&qb)) {
            return Err(format!("ideal does not contain {q}"));
        }
        let expected = crate::arith::big_pow(&BigUint::from(q), f as u64);
        if self.norm() != expected {
            return Err(format!("norm {} is not {q}^{f}", self.norm()));
        }
        if !self.residue_ring_is_field(k, q, f as usize) {
            return Err(String::from("residue ring is not a field"));
        }
        let pe = self.pow(k, e as u64);
        let pe1 = pe.mul(k, &self);
        if !pe.contains(&k.from_int(&qb)) || pe1.contains(&k.from_int(&qb)) {
            return Err(format!("ramification index is not {e}"));
        }
        Ok(self.with_prime(PrimeData { residue_char: q, e, f }))
    }

    /// `O/I` for `qO` contained in `I` is a field iff Frobenius is injective
    /// and fixes exactly a line.
    fn residue_ring_is_field(&self, k: &NumberField, q: u64, f: usize) -> bool {
        let cols: Vec<usize> = (0..self.hnf.len())
            .filter(|&j| self.hnf[j][j] == BigInt::from(q))
            .collect();
        if cols.len() != f {
            return false;
        }
        let mut frob: Vec<Vec<u64>> = alloc::vec![alloc::vec![0; f]; f];
        for (c, &j) in cols.iter().enumerate() {
            let x = self.pow_mod(k, &k.basis_element(j), q);
            for (r, &i) in cols.iter().enumerate() {
                frob[r][c] = x.0[i].to_u64().unwrap_or(0) % q;
            }
        }
        let mut shifted = frob.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + q - 1) % q;
        }
        linalg::rank_mod_p(&frob, q) == f && linalg::rank_mod_p(&shifted, q) == f - 1
    }

    /// `a^exp` reduced modulo the ideal.
    pub fn pow_mod(&self, k: &NumberField, a: &AlgebraicInteger, mut exp: u64) -> AlgebraicInteger {
        let mut acc = self.reduce(&k.one());
        let mut base = self.reduce(a);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce(&k.mul(&acc, &base));
            }
            exp >>= 1;
            if exp > 0 {
                base = self.reduce(&k.mul(&base, &base));
            }
        }
        acc
    }

    /// `a^exp` reduced modulo the ideal, for a big exponent.
    pub fn pow_mod_big(&self, k: &NumberField, a: &AlgebraicInteger, exp: &BigUint) -> AlgebraicInteger {
        let mut acc = self.reduce(&k.one());
        let base = self.reduce(a);
        for i in (0..exp.bits()).rev() {
            acc = self.reduce(&k.mul(&acc, &acc));
            if exp.bit(i) {
                acc = self.reduce(&k.mul(&acc, &base));
            }
        }
        acc
    }
}
