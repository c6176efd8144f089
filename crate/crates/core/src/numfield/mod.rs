//! Totally real Galois number fields with an explicit integral basis.
//!
//! Elements are coordinate vectors over the integral basis; ideals are
//! full-rank sublattices in canonical Hermite normal form. Real quadratic
//! fields are built from scratch by [`make_quadratic_field`]; every other
//! field is validated from a [`FieldDescription`].

mod embedding;
mod error;
mod ideal;
mod key;
mod quadratic;

pub use embedding::{Interval, RealEmbedding};
pub use error::FieldError;
pub use ideal::{IntegralIdeal, PrimeData};
pub use key::PrimeKey;
pub use quadratic::{class_number_by_reduced_ideals, fundamental_unit, make_quadratic_field};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::poly::{self, Poly};

/// Element of the ring of integers, as coordinates over the integral basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicInteger(pub Vec<BigInt>);

impl AlgebraicInteger {
    pub fn from_i64s(c: &[i64]) -> Self {
        AlgebraicInteger(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// How the field was obtained; quadratic fields support prime factoring,
/// class numbers and principalization without further input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Quadratic { m: u64 },
    Described,
}

/// A prime ideal supplied with the field, with an optional generator of
/// its `h`-th power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfiguredPrime {
    pub key: PrimeKey,
    pub ideal: IntegralIdeal,
    pub generator: Option<AlgebraicInteger>,
}

/// Raw field data, validated by [`NumberField::from_description`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescription {
    pub label: Option<String>,
    pub degree: usize,
    /// Ascending coefficients, last entry 1.
    pub poly: Vec<BigInt>,
    /// Row `i` holds basis element `i` over the power basis.
    pub integral_basis: RatMatrix,
    /// `mult_table[i][j]` holds `b_i * b_j` over the integral basis.
    pub mult_table: Vec<Vec<Vec<BigInt>>>,
    pub disc: BigInt,
    /// `coords(tau(a)) = M * coords(a)`.
    pub automorphisms: Vec<IntMatrix>,
    pub units: Vec<Vec<BigInt>>,
    pub class_number: u64,
    pub primes: Vec<PrimeDescription>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDescription {
    pub hnf: IntMatrix,
    pub residue_char: u64,
    pub e: u32,
    pub f: u32,
    pub generator: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    label: String,
    degree: usize,
    poly: Vec<BigInt>,
    integral_basis: RatMatrix,
    mult_table: Vec<Vec<Vec<BigInt>>>,
    disc: BigInt,
    automorphisms: Vec<IntMatrix>,
    units: Vec<AlgebraicInteger>,
    class_number: u64,
    primes: Vec<ConfiguredPrime>,
    kind: FieldKind,
    one: AlgebraicInteger,
}

impl NumberField {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn integral_basis(&self) -> &RatMatrix {
        &self.integral_basis
    }

    pub fn mult_table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.mult_table
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn automorphisms(&self) -> &[IntMatrix] {
        &self.automorphisms
    }

    pub fn units(&self) -> &[AlgebraicInteger] {
        &self.units
    }

    pub fn class_number(&self) -> u64 {
        self.class_number
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn configured_primes(&self) -> &[ConfiguredPrime] {
        &self.primes
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.kind, FieldKind::Quadratic { .. })
    }

    pub fn one(&self) -> AlgebraicInteger {
        self.one.clone()
    }

    pub fn zero(&self) -> AlgebraicInteger {
        AlgebraicInteger(vec![BigInt::zero(); self.degree])
    }

    pub fn from_int(&self, n: &BigInt) -> AlgebraicInteger {
        self.scale(&self.one, n)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraicInteger {
        let mut v = vec![BigInt::zero(); self.degree];
        v[i] = BigInt::one();
        AlgebraicInteger(v)
    }

    pub fn add(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &AlgebraicInteger, n: &BigInt) -> AlgebraicInteger {
        AlgebraicInteger(a.0.iter().map(|x| x * n).collect())
    }

    /// Product through the structure constants.
    pub fn mul(&self, a: &AlgebraicInteger, b: &AlgebraicInteger) -> AlgebraicInteger {
        mul_with_table(&self.mult_table, &a.0, &b.0)
    }

    pub fn pow(&self, a: &AlgebraicInteger, mut exp: u64) -> AlgebraicInteger {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of `x -> a x`; column `j` is `a * b_j`.
    pub fn mult_matrix(&self, a: &AlgebraicInteger) -> IntMatrix {
        let d = self.degree;
        let cols: Vec<AlgebraicInteger> =
            (0..d).map(|j| self.mul(a, &self.basis_element(j))).collect();
        (0..d).map(|i| (0..d).map(|j| cols[j].0[i].clone()).collect()).collect()
    }

    /// Field norm, the determinant of the multiplication matrix.
    pub fn element_norm(&self, a: &AlgebraicInteger) -> BigInt {
        linalg::determinant(&self.mult_matrix(a))
    }

    pub fn trace(&self, a: &AlgebraicInteger) -> BigInt {
        let m = self.mult_matrix(a);
        (0..self.degree).map(|i| m[i][i].clone()).sum()
    }

    /// Image of `a` under the automorphism with index `tau`.
    pub fn apply_automorphism(&self, tau: usize, a: &AlgebraicInteger) -> AlgebraicInteger {
        AlgebraicInteger(linalg::mat_vec(&self.automorphisms[tau], &a.0))
    }

    /// Index of the identity automorphism.
    pub fn identity_automorphism(&self) -> usize {
        let id = linalg::identity(self.degree);
        self.automorphisms.iter().position(|m| *m == id).unwrap_or(0)
    }

    /// Coordinates over the power basis of the defining polynomial.
    pub fn to_power_basis(&self, a: &AlgebraicInteger) -> Vec<BigRational> {
        let d = self.degree;
        let mut out = vec![BigRational::zero(); d];
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = BigRational::from_integer(c.clone());
            for k in 0..d {
                out[k] += &c * &self.integral_basis[i][k];
            }
        }
        out
    }

    /// Integral-basis coordinates of a power-basis vector, if integral.
    pub fn from_power_basis(&self, v: &[BigRational]) -> Option<AlgebraicInteger> {
        let inv = linalg::rat_inverse(&self.integral_basis)?;
        let d = self.degree;
        let mut out = Vec::with_capacity(d);
        for j in 0..d {
            let mut s = BigRational::zero();
            for k in 0..d {
                s += &v[k] * &inv[k][j];
            }
            if !s.is_integer() {
                return None;
            }
            out.push(s.to_integer());
        }
        Some(AlgebraicInteger(out))
    }

    /// Real embeddings, one per root of the defining polynomial.
    pub fn real_embeddings(&self) -> Vec<RealEmbedding> {
        let p = Poly::from_ints(&self.poly);
        p.isolate_real_roots()
            .into_iter()
            .map(|iv| RealEmbedding::new(p.clone(), iv))
            .collect()
    }

    /// Prime ideals above the rational prime `q` with `(e, f)` attached,
    /// ordered by key.
    pub fn factor_rational_prime(&self, q: u64) -> Result<Vec<(PrimeKey, IntegralIdeal)>, FieldError> {
        if !crate::arith::is_prime_u64(q) {
            return Err(FieldError::Invalid(format!("{q} is not a rational prime")));
        }
        match self.kind {
            FieldKind::Quadratic { m } => quadratic::factor_rational_prime(self, m, q),
            FieldKind::Described => {
                let found: Vec<(PrimeKey, IntegralIdeal)> = self
                    .primes
                    .iter()
                    .filter(|p| p.key.residue_char == q)
                    .map(|p| (p.key.clone(), p.ideal.clone()))
                    .collect();
                let total: usize = found
                    .iter()
                    .map(|(_, i)| i.prime().map(|d| (d.e * d.f) as usize).unwrap_or(0))
                    .sum();
                if total != self.degree {
                    return Err(FieldError::MissingPrimes(q));
                }
                Ok(found)
            }
        }
    }

    /// Look up the prime ideal with the given key.
    pub fn prime_by_key(&self, key: &PrimeKey) -> Result<IntegralIdeal, FieldError> {
        match self.kind {
            FieldKind::Quadratic { .. } => self
                .factor_rational_prime(key.residue_char)?
                .into_iter()
                .find(|(k, _)| k == key)
                .map(|(_, i)| i)
                .ok_or_else(|| FieldError::UnknownPrime(format!("{key}"))),
            FieldKind::Described => self
                .primes
                .iter()
                .find(|p| p.key == *key)
                .map(|p| p.ideal.clone())
                .ok_or_else(|| FieldError::UnknownPrime(format!("{key}"))),
        }
    }

    /// Key of a prime ideal of this field, when the field knows it.
    pub fn key_of(&self, ideal: &IntegralIdeal) -> Result<PrimeKey, FieldError> {
        let q = ideal
            .prime()
            .map(|d| d.residue_char)
            .ok_or_else(|| FieldError::NotPrime(String::from("ideal carries no prime data")))?;
        match self.kind {
            FieldKind::Quadratic { .. } => self
                .factor_rational_prime(q)?
                .into_iter()
                .find(|(_, i)| i.hnf() == ideal.hnf())
                .map(|(k, _)| k)
                .ok_or_else(|| FieldError::NotPrime(String::from("not a prime of this field"))),
            FieldKind::Described => self
                .primes
                .iter()
                .find(|p| p.ideal.hnf() == ideal.hnf())
                .map(|p| p.key.clone())
                .ok_or_else(|| FieldError::UnknownPrime(String::from("prime not in field data"))),
        }
    }

    /// A generator of `I` when `I` is principal. For quadratic fields this
    /// walks the cycle of reduced ideals; otherwise only configured prime
    /// powers `l^h` are known.
    pub fn principal_generator(&self, ideal: &IntegralIdeal) -> Result<Option<AlgebraicInteger>, FieldError> {
        match self.kind {
            FieldKind::Quadratic { m } => quadratic::principal_generator(self, m, ideal),
            FieldKind::Described => {
                if ideal.norm().is_one() {
                    return Ok(Some(self.one()));
                }
                for p in self.primes.iter() {
                    if let Some(g) = &p.generator {
                        let power = p.ideal.pow(self, self.class_number);
                        if power.hnf() == ideal.hnf() {
                            return Ok(Some(g.clone()));
                        }
                    }
                }
                Ok(None)
            }
        }
    }

    /// Generator of `l^h` for a prime `l`; `h` is the class number.
    pub fn principalize_prime(&self, prime: &IntegralIdeal) -> Result<AlgebraicInteger, FieldError> {
        let power = prime.pow(self, self.class_number);
        self.principal_generator(&power)?.ok_or_else(|| {
            FieldError::Principalization(format!(
                "no generator known for l^h with l of norm {}",
                prime.norm()
            ))
        })
    }

    /// Validate a field description and build the field.
    pub fn from_description(desc: &FieldDescription) -> Result<Self, FieldError> {
        let d = desc.degree;
        if d == 0 {
            return Err(FieldError::Invalid(String::from("degree must be positive")));
        }
        if desc.poly.len() != d + 1 || !desc.poly[d].is_one() {
            return Err(FieldError::Invalid(format!(
                "poly must be monic of degree {d} (ascending coefficients ending in 1)"
            )));
        }
        let p = Poly::from_ints(&desc.poly);
        if let Some(false) = poly::is_irreducible_monic_small(&desc.poly) {
            return Err(FieldError::Invalid(String::from("poly is reducible over Q")));
        }
        if !p.is_squarefree() || p.count_real_roots() != d {
            return Err(FieldError::NotTotallyReal);
        }
        if desc.integral_basis.len() != d || desc.integral_basis.iter().any(|r| r.len() != d) {
            return Err(FieldError::Invalid(format!("integral_basis must be {d}x{d}")));
        }
        if linalg::rat_inverse(&desc.integral_basis).is_none() {
            return Err(FieldError::Invalid(String::from("integral_basis is singular")));
        }
        check_mult_table(desc)?;

        let mut field = NumberField {
            label: desc.label.clone().unwrap_or_else(|| format!("{d}.{d}.{}.1", desc.disc.magnitude())),
            degree: d,
            poly: desc.poly.clone(),
            integral_basis: desc.integral_basis.clone(),
            mult_table: desc.mult_table.clone(),
            disc: desc.disc.clone(),
            automorphisms: desc.automorphisms.clone(),
            units: desc.units.iter().map(|u| AlgebraicInteger(u.clone())).collect(),
            class_number: desc.class_number,
            primes: Vec::new(),
            kind: FieldKind::Described,
            one: AlgebraicInteger(Vec::new()),
        };
        let mut one_pb = vec![BigRational::zero(); d];
        one_pb[0] = BigRational::one();
        field.one = field
            .from_power_basis(&one_pb)
            .ok_or_else(|| FieldError::Invalid(String::from("1 is not in the lattice spanned by the integral basis")))?;

        let trace_form: IntMatrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| field.trace(&field.mul(&field.basis_element(i), &field.basis_element(j))))
                    .collect()
            })
            .collect();
        let disc = linalg::determinant(&trace_form);
        if disc != desc.disc {
            return Err(FieldError::Invalid(format!(
                "disc {} does not match the trace-form discriminant {disc}",
                desc.disc
            )));
        }
        if !disc.is_positive() {
            return Err(FieldError::NotTotallyReal);
        }

        field.check_automorphisms()?;

        if field.units.len() + 1 != d {
            return Err(FieldError::UnitCount { expected: d - 1, got: field.units.len() });
        }
        for (i, u) in field.units.iter().enumerate() {
            if u.0.len() != d {
                return Err(FieldError::Invalid(format!("unit {i} has {} coordinates", u.0.len())));
            }
            let n = field.element_norm(u);
            if !n.magnitude().is_one() {
                return Err(FieldError::BadUnitNorm { index: i, norm: n });
            }
        }
        if desc.class_number == 0 {
            return Err(FieldError::Invalid(String::from("class_number must be positive")));
        }

        let mut primes = Vec::new();
        for (i, pd) in desc.primes.iter().enumerate() {
            let ideal = IntegralIdeal::from_hnf(&field, pd.hnf.clone())
                .map_err(|e| FieldError::Invalid(format!("prime {i}: {e}")))?;
            let ideal = ideal
                .verify_prime(&field, pd.residue_char, pd.e, pd.f)
                .map_err(|e| FieldError::Invalid(format!("prime {i}: {e}")))?;
            let generator = pd.generator.clone().map(AlgebraicInteger);
            primes.push((ideal, generator));
        }
        field.primes = assign_keys(primes);
        for (i, p) in field.primes.iter().enumerate() {
            if let Some(g) = &p.generator {
                let power = p.ideal.pow(&field, field.class_number);
                let gen_ideal = IntegralIdeal::from_generators(&field, core::slice::from_ref(g))?;
                if gen_ideal.hnf() != power.hnf() {
                    return Err(FieldError::Invalid(format!(
                        "prime {i}: generator does not generate l^h"
                    )));
                }
            }
        }
        for w in field.primes.windows(2) {
            if w[0].key == w[1].key {
                return Err(FieldError::Invalid(format!("duplicate prime {}", w[0].key)));
            }
        }

        if d == 2 {
            if let Some(canon) = quadratic::canonical_for(&field) {
                if canon.integral_basis == field.integral_basis
                    && canon.mult_table == field.mult_table
                    && canon.automorphisms == field.automorphisms
                {
                    field.kind = canon.kind.clone();
                    if desc.label.is_none() {
                        field.label = canon.label.clone();
                    }
                }
            }
        }
        Ok(field)
    }

    /// Description that rebuilds this field through
    /// [`NumberField::from_description`].
    pub fn to_description(&self) -> FieldDescription {
        FieldDescription {
            label: Some(self.label.clone()),
            degree: self.degree,
            poly: self.poly.clone(),
            integral_basis: self.integral_basis.clone(),
            mult_table: self.mult_table.clone(),
            disc: self.disc.clone(),
            automorphisms: self.automorphisms.clone(),
            units: self.units.iter().map(|u| u.0.clone()).collect(),
            class_number: self.class_number,
            primes: self
                .primes
                .iter()
                .map(|p| {
                    let data = p.ideal.prime().cloned().unwrap_or(PrimeData { residue_char: 0, e: 0, f: 0 });
                    PrimeDescription {
                        hnf: p.ideal.hnf().clone(),
                        residue_char: data.residue_char,
                        e: data.e,
                        f: data.f,
                        generator: p.generator.as_ref().map(|g| g.0.clone()),
                    }
                })
                .collect(),
        }
    }

    fn check_automorphisms(&self) -> Result<(), FieldError> {
        let d = self.degree;
        if self.automorphisms.len() != d {
            return Err(FieldError::NotGalois(format!(
                "{} automorphisms supplied for degree {d}",
                self.automorphisms.len()
            )));
        }
        for (t, m) in self.automorphisms.iter().enumerate() {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(FieldError::Invalid(format!("automorphism {t} must be {d}x{d}")));
            }
            if !linalg::determinant(m).magnitude().is_one() {
                return Err(FieldError::NotGalois(format!("automorphism {t} is not invertible over Z")));
            }
            if linalg::mat_vec(m, &self.one.0) != self.one.0 {
                return Err(FieldError::NotGalois(format!("automorphism {t} does not fix 1")));
            }
            let img: Vec<AlgebraicInteger> = (0..d)
                .map(|i| AlgebraicInteger(linalg::mat_vec(m, &self.basis_element(i).0)))
                .collect();
            for i in 0..d {
                for j in 0..d {
                    let lhs = AlgebraicInteger(linalg::mat_vec(
                        m,
                        &self.mul(&self.basis_element(i), &self.basis_element(j)).0,
                    ));
                    if lhs != self.mul(&img[i], &img[j]) {
                        return Err(FieldError::NotGalois(format!(
                            "automorphism {t} is not multiplicative"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.automorphisms[i] == self.automorphisms[j] {
                    return Err(FieldError::NotGalois(format!("automorphisms {i} and {j} coincide")));
                }
            }
        }
        let id = linalg::identity(d);
        if !self.automorphisms.contains(&id) {
            return Err(FieldError::NotGalois(String::from("identity automorphism missing")));
        }
        for a in self.automorphisms.iter() {
            for b in self.automorphisms.iter() {
                if !self.automorphisms.contains(&linalg::mat_mul(a, b)) {
                    return Err(FieldError::NotGalois(String::from(
                        "automorphisms are not closed under composition",
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn mul_with_table(t: &[Vec<Vec<BigInt>>], a: &[BigInt], b: &[BigInt]) -> AlgebraicInteger {
    let d = a.len();
    let mut out = vec![BigInt::zero(); d];
    for i in 0..d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if b[j].is_zero() {
                continue;
            }
            let c = &a[i] * &b[j];
            for k in 0..d {
                if !t[i][j][k].is_zero() {
                    out[k] += &c * &t[i][j][k];
                }
            }
        }
    }
    AlgebraicInteger(out)
}

fn check_mult_table(desc: &FieldDescription) -> Result<(), FieldError> {
    let d = desc.degree;
    let t = &desc.mult_table;
    if t.len() != d || t.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
        return Err(FieldError::Invalid(format!("mult_table must be {d}x{d}x{d}")));
    }
    let e = |i: usize| {
        let mut v = vec![BigInt::zero(); d];
        v[i] = BigInt::one();
        v
    };
    for i in 0..d {
        for j in 0..d {
            if t[i][j] != t[j][i] {
                return Err(FieldError::Invalid(String::from("mult_table is not commutative")));
            }
            for k in 0..d {
                let ij = mul_with_table(t, &e(i), &e(j));
                let jk = mul_with_table(t, &e(j), &e(k));
                if mul_with_table(t, &ij.0, &e(k)) != mul_with_table(t, &e(i), &jk.0) {
                    return Err(FieldError::Invalid(String::from("mult_table is not associative")));
                }
            }
        }
    }
    // Agreement with multiplication in Q[x]/(poly).
    let p = Poly::from_ints(&desc.poly);
    for i in 0..d {
        for j in 0..d {
            let bi = Poly::new(desc.integral_basis[i].clone());
            let bj = Poly::new(desc.integral_basis[j].clone());
            let prod = bi.mul(&bj).rem(&p);
            let mut expect = vec![BigRational::zero(); d];
            for k in 0..d {
                let c = BigRational::from_integer(t[i][j][k].clone());
                for l in 0..d {
                    expect[l] += &c * &desc.integral_basis[k][l];
                }
            }
            let mut got = prod.coeffs().to_vec();
            got.resize(d, BigRational::zero());
            if got != expect {
                return Err(FieldError::Invalid(format!(
                    "mult_table entry ({i}, {j}) disagrees with the defining polynomial"
                )));
            }
        }
    }
    Ok(())
}

/// Keys `q.N.i`: primes sharing `(q, N)` are indexed from 1 in HNF order.
fn assign_keys(mut primes: Vec<(IntegralIdeal, Option<AlgebraicInteger>)>) -> Vec<ConfiguredPrime> {
    primes.sort_by(|a, b| {
        let da = a.0.prime().map(|d| d.residue_char).unwrap_or(0);
        let db = b.0.prime().map(|d| d.residue_char).unwrap_or(0);
        (a.0.norm(), da, a.0.hnf()).cmp(&(b.0.norm(), db, b.0.hnf()))
    });
    let mut counters: BTreeMap<(u64, BigUint), u32> = BTreeMap::new();
    primes
        .into_iter()
        .map(|(ideal, generator)| {
            let q = ideal.prime().map(|d| d.residue_char).unwrap_or(0);
            let n = ideal.norm();
            let idx = counters.entry((q, n.clone())).or_insert(0);
            *idx += 1;
            ConfiguredPrime {
                key: PrimeKey { residue_char: q, norm: n.to_u64().unwrap_or(u64::MAX), index: *idx },
                ideal,
                generator,
            }
        })
        .collect()
}

/// Order prime ideals above one rational prime into keyed entries.
pub(crate) fn key_primes_above(q: u64, mut ideals: Vec<IntegralIdeal>) -> Vec<(PrimeKey, IntegralIdeal)> {
    ideals.sort_by(|a, b| (a.norm(), a.hnf()).cmp(&(b.norm(), b.hnf())));
    let mut counters: BTreeMap<BigUint, u32> = BTreeMap::new();
    ideals
        .into_iter()
        .map(|i| {
            let n = i.norm();
            let idx = counters.entry(n.clone()).or_insert(0);
            *idx += 1;
            (PrimeKey { residue_char: q, norm: n.to_u64().unwrap_or(u64::MAX), index: *idx }, i)
        })
        .collect()
}

/// Helper for tests and callers working with small integers.
pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests;
