//! Hilbert eigenforms of parallel weight 2: Hecke fields, eigenvalue
//! tables and validation against the base field.
//!
//! Eigenvalues are integer coordinates over the power basis of the Hecke
//! field `Q[x]/(f)`. The Hasse-Weil check is exact: with `chi` the
//! characteristic polynomial of `a`, every root `r` of `chi` must satisfy
//! `r^2 <= 4N`, decided by Sturm counts on the polynomial whose roots are
//! the `r^2`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{self, IntMatrix};
use crate::numfield::{IntegralIdeal, NumberField, PrimeKey};
use crate::poly::{self, Poly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("dataset field `{got}` does not match the base field `{expected}`")]
    FieldMismatch { expected: String, got: String },
    #[error("form {label}: parallel weight must be 2")]
    Weight { label: String },
    #[error("form {label}: level_hnf is not a canonical HNF of an ideal: {reason}")]
    BadLevel { label: String, reason: String },
    #[error("form {label}: level_norm {got} does not match the HNF norm {expected}")]
    LevelNorm { label: String, expected: BigUint, got: BigUint },
    #[error("form {label}: hecke_poly {reason}")]
    HeckePoly { label: String, reason: String },
    #[error("form {label}: malformed prime key `{key}`")]
    BadPrimeKey { label: String, key: String },
    #[error("form {label}: prime {key} is not a prime of the base field")]
    UnknownPrime { label: String, key: String },
    #[error("form {label}: eigenvalue at {key} has {got} coordinates, expected {expected}")]
    VectorLength { label: String, key: String, expected: usize, got: usize },
    #[error("form {label}: a_{key} violates the Hasse-Weil bound |a| <= 2 sqrt({norm})")]
    HasseWeil { label: String, key: String, norm: u64 },
    #[error("duplicate form label `{0}`")]
    DuplicateLabel(String),
    #[error("form label must be non-empty")]
    EmptyLabel,
    #[error("prime table entry {key}: {reason}")]
    BadPrimeEntry { key: String, reason: String },
}

/// `Q[x]/(f)` for a monic integer `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeField {
    poly: Vec<BigInt>,
}

impl HeckeField {
    /// Ascending coefficients, monic, irreducible (checked up to degree 4),
    /// totally real.
    pub fn new(poly: Vec<BigInt>) -> Result<Self, String> {
        if poly.len() < 2 {
            return Err("must have degree at least 1".into());
        }
        if !poly.last().is_some_and(|c| c.is_one()) {
            return Err("must be monic (last coefficient 1)".into());
        }
        if poly::is_irreducible_monic_small(&poly) == Some(false) {
            return Err("is reducible over Q".into());
        }
        let p = Poly::from_ints(&poly);
        let d = poly.len() - 1;
        if !p.is_squarefree() || p.count_real_roots() != d {
            return Err("is not totally real".into());
        }
        Ok(HeckeField { poly })
    }

    pub fn rational() -> Self {
        HeckeField { poly: alloc::vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Matrix of multiplication by `a` on the power basis; `a` reduced mod `f`
    /// is expected (length `degree`).
    pub fn mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let d = self.degree();
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        let mut cur: Vec<BigInt> = a.to_vec();
        cur.resize(d, BigInt::zero());
        for _ in 0..d {
            cols.push(cur.clone());
            cur = self.times_x(&cur);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    fn times_x(&self, v: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let top = v[d - 1].clone();
        let mut out = Vec::with_capacity(d);
        out.push(BigInt::zero());
        out.extend(v[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (i, o) in out.iter_mut().enumerate() {
                *o -= &top * &self.poly[i];
            }
        }
        out
    }

    /// `Norm_{Q_f/Q}(a)`.
    pub fn norm(&self, a: &[BigInt]) -> BigInt {
        linalg::determinant(&self.mult_matrix(a))
    }

    /// `a` lies in `Q`.
    pub fn is_rational_element(&self, a: &[BigInt]) -> bool {
        a.iter().skip(1).all(|c| c.is_zero())
    }

    /// `a - t`.
    pub fn sub_int(&self, a: &[BigInt], t: &BigInt) -> Vec<BigInt> {
        let mut v = a.to_vec();
        v[0] -= t;
        v
    }

    /// Every embedding of `a` lies in `[-2 sqrt n, 2 sqrt n]`.
    pub fn within_hasse_weil(&self, a: &[BigInt], n: u64) -> bool {
        let chi = poly::characteristic_poly(&self.mult_matrix(a));
        let squares = poly::square_roots_poly(&chi);
        let bound = BigRational::from_integer(BigInt::from(4u64) * BigInt::from(n));
        squares.count_roots_above(&bound) == 0
    }
}

/// Unvalidated form data, as read from a dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInput {
    pub label: String,
    pub level_hnf: IntMatrix,
    pub level_norm: BigUint,
    /// Per-embedding weights; a single entry stands for parallel weight.
    pub weight: Vec<i64>,
    pub hecke_poly: Vec<BigInt>,
    pub eigenvalues: BTreeMap<String, Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformRecord {
    pub label: String,
    pub level: IntegralIdeal,
    pub level_norm: BigUint,
    pub hecke_field: HeckeField,
    pub eigenvalues: BTreeMap<PrimeKey, Vec<BigInt>>,
}

impl EigenformRecord {
    pub fn is_base_field_rational(&self) -> bool {
        self.hecke_field.is_rational()
    }

    /// Stored `a_l`; absence is distinct from zero.
    pub fn eigenvalue_at(&self, key: &PrimeKey) -> Option<&[BigInt]> {
        self.eigenvalues.get(key).map(|v| v.as_slice())
    }

    /// Every stored eigenvalue is zero.
    pub fn is_degenerate(&self) -> bool {
        self.eigenvalues.values().all(|v| v.iter().all(|c| c.is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    File { path: String },
    Remote { url: String, retrieved_at: String },
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDataset {
    pub field_label: String,
    pub records: Vec<EigenformRecord>,
    /// Every prime ideal referenced by a record.
    pub primes: BTreeMap<PrimeKey, IntegralIdeal>,
    pub provenance: Provenance,
}

impl FormDataset {
    pub fn empty(field_label: &str) -> Self {
        FormDataset {
            field_label: field_label.to_string(),
            records: Vec::new(),
            primes: BTreeMap::new(),
            provenance: Provenance::Empty,
        }
    }

    /// Keys present in every record, in key order.
    pub fn coverage(&self) -> Vec<PrimeKey> {
        let mut it = self.records.iter();
        let Some(first) = it.next() else {
            return Vec::new();
        };
        let mut common: BTreeSet<PrimeKey> = first.eigenvalues.keys().cloned().collect();
        for r in it {
            common.retain(|k| r.eigenvalues.contains_key(k));
        }
        common.into_iter().collect()
    }
}

/// Resolve a prime key to an ideal of `k`, using an optional HNF supplied
/// with the dataset.
fn resolve_prime(
    k: &NumberField,
    key: &PrimeKey,
    hnf: Option<&IntMatrix>,
) -> Result<IntegralIdeal, String> {
    if let Ok(ideal) = k.prime_by_key(key) {
        if let Some(h) = hnf {
            if h != ideal.hnf() {
                return Err(format!("HNF does not match the field's prime {key}"));
            }
        }
        return Ok(ideal);
    }
    let h = hnf.ok_or_else(|| format!("{key} is not a prime of the base field"))?;
    let ideal = IntegralIdeal::from_hnf(k, h.clone())?;
    let f = key.residue_degree();
    let d = k.degree() as u32;
    for e in 1..=d / f.max(1) {
        if let Ok(p) = ideal.clone().verify_prime(k, key.residue_char, e, f) {
            return Ok(p);
        }
    }
    Err(format!("HNF is not a prime of norm {}", key.norm))
}

/// Validate a dataset: field label, prime table, then each form in order.
pub fn validate_dataset(
    k: &NumberField,
    field_label: &str,
    prime_hnfs: &BTreeMap<String, IntMatrix>,
    forms: &[FormInput],
    provenance: Provenance,
) -> Result<FormDataset, FormError> {
    if field_label != k.label() {
        return Err(FormError::FieldMismatch { expected: k.label().to_string(), got: field_label.to_string() });
    }
    let mut table: BTreeMap<PrimeKey, IntMatrix> = BTreeMap::new();
    for (key, h) in prime_hnfs {
        let pk: PrimeKey = key
            .parse()
            .map_err(|_| FormError::BadPrimeEntry { key: key.clone(), reason: "malformed key".into() })?;
        table.insert(pk, h.clone());
    }
    let mut primes: BTreeMap<PrimeKey, IntegralIdeal> = BTreeMap::new();
    for (key, h) in table.iter() {
        let ideal = resolve_prime(k, key, Some(h))
            .map_err(|reason| FormError::BadPrimeEntry { key: key.to_string(), reason })?;
        primes.insert(key.clone(), ideal);
    }
    let mut labels = BTreeSet::new();
    let mut records = Vec::with_capacity(forms.len());
    for f in forms {
        if !labels.insert(f.label.clone()) {
            return Err(FormError::DuplicateLabel(f.label.clone()));
        }
        records.push(validate_form(k, f, &mut primes)?);
    }
    records.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(FormDataset { field_label: field_label.to_string(), records, primes, provenance })
}

fn validate_form(
    k: &NumberField,
    f: &FormInput,
    primes: &mut BTreeMap<PrimeKey, IntegralIdeal>,
) -> Result<EigenformRecord, FormError> {
    let label = f.label.clone();
    if label.is_empty() {
        return Err(FormError::EmptyLabel);
    }
    let d = k.degree();
    let weight_ok = (f.weight.len() == 1 || f.weight.len() == d) && f.weight.iter().all(|&w| w == 2);
    if !weight_ok {
        return Err(FormError::Weight { label });
    }
    let level = IntegralIdeal::from_hnf(k, f.level_hnf.clone())
        .map_err(|reason| FormError::BadLevel { label: label.clone(), reason })?;
    if level.norm() != f.level_norm {
        return Err(FormError::LevelNorm { label, expected: level.norm(), got: f.level_norm.clone() });
    }
    let hecke_field = HeckeField::new(f.hecke_poly.clone())
        .map_err(|reason| FormError::HeckePoly { label: label.clone(), reason })?;
    let deg = hecke_field.degree();
    let mut eigenvalues = BTreeMap::new();
    for (key, v) in f.eigenvalues.iter() {
        let pk: PrimeKey = key
            .parse()
            .map_err(|_| FormError::BadPrimeKey { label: label.clone(), key: key.clone() })?;
        if !primes.contains_key(&pk) {
            let ideal = resolve_prime(k, &pk, None)
                .map_err(|_| FormError::UnknownPrime { label: label.clone(), key: key.clone() })?;
            primes.insert(pk.clone(), ideal);
        }
        if v.len() != deg {
            return Err(FormError::VectorLength { label, key: key.clone(), expected: deg, got: v.len() });
        }
        if !hecke_field.within_hasse_weil(v, pk.norm) {
            return Err(FormError::HasseWeil { label, key: key.clone(), norm: pk.norm });
        }
        eigenvalues.insert(pk, v.clone());
    }
    Ok(EigenformRecord { label, level, level_norm: f.level_norm.clone(), hecke_field, eigenvalues })
}
