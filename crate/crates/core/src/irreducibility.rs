//! Twisted norms `N_s(a) = prod_tau tau(a)^{s_tau}` with `s in {0,12}^G`,
//! the constants `A_s`, their lcm `B`, and the irreducibility threshold.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_traits::One;

use crate::arith;
use crate::numfield::{AlgebraicInteger, FieldError, IntegralIdeal, NumberField, PrimeKey};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IrreducibilityError {
    #[error("degree 1: the set of non-constant sign patterns is empty, B is undefined")]
    DegreeOne,
    #[error("sign pattern {0} is constant")]
    TrivialPattern(SignPattern),
    #[error("sign pattern has length {got}, expected {expected}")]
    PatternLength { expected: usize, got: usize },
    #[error("every N_s(eps_i) - 1 vanishes for s = {0}, contradicting B != 0")]
    ZeroConstant(SignPattern),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponents in `{0, 12}` indexed by automorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(Vec<u8>);

impl SignPattern {
    pub fn new(values: Vec<u8>) -> Option<Self> {
        values.iter().all(|&v| v == 0 || v == 12).then_some(SignPattern(values))
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&v| v == 0) || self.0.iter().all(|&v| v == 12)
    }

    /// `12 - s`.
    pub fn complement(&self) -> SignPattern {
        SignPattern(self.0.iter().map(|v| 12 - v).collect())
    }

    /// `(s o tau)_sigma = s_{tau sigma}` as an index permutation.
    pub fn compose(&self, perm: &[usize]) -> SignPattern {
        SignPattern(perm.iter().map(|&i| self.0[i]).collect())
    }

    /// All non-constant patterns of length `d`, lexicographically.
    pub fn nontrivial(d: usize) -> Vec<SignPattern> {
        if d >= usize::BITS as usize {
            return Vec::new();
        }
        (0..(1usize << d))
            .map(|bits| SignPattern((0..d).map(|i| if bits >> (d - 1 - i) & 1 == 1 { 12 } else { 0 }).collect()))
            .filter(|s| !s.is_trivial())
            .collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternConstant {
    pub pattern: SignPattern,
    pub a_s: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityBound {
    pub b: BigUint,
    pub patterns: Vec<PatternConstant>,
    pub merel_momose: BigUint,
    /// Largest prime factor of `B`; an unsplit cofactor stands in for
    /// primes it hides.
    pub b_largest_prime: Option<BigUint>,
    pub b_factorization_complete: bool,
    pub excluded_primes: Vec<BigUint>,
    pub threshold: BigUint,
}

pub fn twisted_norm(k: &NumberField, s: &SignPattern, a: &AlgebraicInteger) -> AlgebraicInteger {
    let mut acc = k.one();
    for (tau, &e) in s.0.iter().enumerate() {
        if e > 0 {
            let conj = k.apply_automorphism(tau, a);
            acc = k.mul(&acc, &k.pow(&conj, e as u64));
        }
    }
    acc
}

/// `A_s = Norm((N_s(eps_1) - 1, ..., N_s(eps_{d-1}) - 1))`.
pub fn pattern_constant(k: &NumberField, s: &SignPattern) -> Result<BigUint, IrreducibilityError> {
    if s.0.len() != k.degree() {
        return Err(IrreducibilityError::PatternLength { expected: k.degree(), got: s.0.len() });
    }
    if s.is_trivial() {
        return Err(IrreducibilityError::TrivialPattern(s.clone()));
    }
    let one = k.one();
    let gens: Vec<AlgebraicInteger> = k
        .units()
        .iter()
        .map(|u| k.sub(&twisted_norm(k, s, u), &one))
        .collect();
    match IntegralIdeal::from_generators(k, &gens) {
        Ok(i) => Ok(i.norm()),
        Err(FieldError::ZeroIdeal) => Err(IrreducibilityError::ZeroConstant(s.clone())),
        Err(e) => Err(e.into()),
    }
}

/// `B` with the table of `A_s` in pattern order.
pub fn bound_b(k: &NumberField) -> Result<(BigUint, Vec<PatternConstant>), IrreducibilityError> {
    if k.degree() < 2 {
        return Err(IrreducibilityError::DegreeOne);
    }
    let mut table = Vec::new();
    for s in SignPattern::nontrivial(k.degree()) {
        let a_s = pattern_constant(k, &s)?;
        table.push(PatternConstant { pattern: s, a_s });
    }
    let b = arith::lcm_all(table.iter().map(|p| &p.a_s)).ok_or(IrreducibilityError::DegreeOne)?;
    Ok((b, table))
}

/// `1 + 3^{6dh}`.
pub fn merel_momose_bound(d: u64, h: u64) -> BigUint {
    arith::big_pow(&BigUint::from(3u32), 6 * d * h) + BigUint::one()
}

/// Threshold above which every prime satisfies the irreducibility
/// hypotheses for curves semistable outside `s`.
pub fn irreducibility_threshold(
    k: &NumberField,
    s: &[(PrimeKey, IntegralIdeal)],
) -> Result<IrreducibilityBound, IrreducibilityError> {
    let (b, patterns) = bound_b(k)?;
    let merel = merel_momose_bound(k.degree() as u64, k.class_number());
    let fb = arith::factor(&b);
    let b_largest = fb.largest_factor_bound();
    let fd = arith::factor(k.disc().magnitude());

    let mut excluded: BTreeSet<BigUint> = BTreeSet::new();
    excluded.extend(fb.primes.iter().map(|(p, _)| p.clone()));
    excluded.extend(fb.unfactored.iter().cloned());
    excluded.extend(fd.primes.iter().map(|(p, _)| p.clone()));
    excluded.extend(fd.unfactored.iter().cloned());
    excluded.extend([2u32, 3, 5, 7, 13].into_iter().map(BigUint::from));
    excluded.extend(s.iter().map(|(key, _)| BigUint::from(key.residue_char)));

    let mut threshold = merel.clone();
    for p in excluded.iter() {
        if *p > threshold {
            threshold = p.clone();
        }
    }
    Ok(IrreducibilityBound {
        b,
        patterns,
        merel_momose: merel,
        b_largest_prime: b_largest,
        b_factorization_complete: fb.is_complete(),
        excluded_primes: excluded.into_iter().collect(),
        threshold,
    })
}

/// Index permutation of `tau` acting on automorphism indices by
/// `sigma -> tau o sigma`.
pub fn left_translation(k: &NumberField, tau: usize) -> Result<Vec<usize>, String> {
    let autos = k.automorphisms();
    autos
        .iter()
        .map(|sigma| {
            let prod = crate::linalg::mat_mul(&autos[tau], sigma);
            autos
                .iter()
                .position(|m| *m == prod)
                .ok_or_else(|| format!("automorphism {tau} does not act on the group"))
        })
        .collect()
}
