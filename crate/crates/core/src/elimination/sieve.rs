use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::characters::{character_value, QuadraticCharacter};
use super::ElimError;
use crate::arith;
use crate::forms::EigenformRecord;
use crate::numfield::{IntegralIdeal, NumberField, PrimeKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    EliminatedNonrational,
    EliminatedTwistMismatch,
    SurvivesCm { character: String },
    InconclusiveDataExhausted,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::EliminatedNonrational => "eliminated_nonrational",
            Outcome::EliminatedTwistMismatch => "eliminated_twist_mismatch",
            Outcome::SurvivesCm { .. } => "survives_cm",
            Outcome::InconclusiveDataExhausted => "inconclusive_data_exhausted",
        }
    }
}

/// Hasse-Weil product data at one prime for a non-rational `a_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonrationalWitness {
    pub prime: PrimeKey,
    pub norm: u64,
    /// `floor(2 sqrt N)`.
    pub box_bound: u64,
    /// `Norm(a - t)` for `t = -box_bound ..= box_bound`.
    pub good_factors: Vec<BigInt>,
    pub good_product: BigUint,
    /// `Norm(a - (N + 1))`, `Norm(a + (N + 1))`.
    pub mult_factors: [BigInt; 2],
    pub mult_product: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWitness {
    pub prime: PrimeKey,
    pub norm: u64,
    pub a: BigInt,
    /// `|2a|`.
    pub good: BigUint,
    /// `(N + 1)^2 - a^2`.
    pub mult: BigUint,
    pub contribution: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterCheck {
    Mismatch(TwistWitness),
    /// No mismatch among `checked` primes with nonzero character value.
    CmConsistent { checked: usize, max_norm: u64 },
    /// No covered prime outside `S` with nonzero character value.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVerdict {
    pub label: String,
    pub outcome: Outcome,
    pub contribution: BigUint,
    pub nonrational: Option<NonrationalWitness>,
    pub twists: Vec<(String, CharacterCheck)>,
    pub warnings: Vec<String>,
}

/// Character values at every covered prime outside `S`, shared by all forms.
pub struct SieveContext {
    s: BTreeSet<PrimeKey>,
    characters: Vec<QuadraticCharacter>,
    values: BTreeMap<PrimeKey, Vec<i8>>,
}

impl SieveContext {
    pub fn new(
        k: &NumberField,
        s: &[(PrimeKey, IntegralIdeal)],
        characters: &[QuadraticCharacter],
        primes: &BTreeMap<PrimeKey, IntegralIdeal>,
    ) -> Self {
        let s: BTreeSet<PrimeKey> = s.iter().map(|(key, _)| key.clone()).collect();
        let values = primes
            .iter()
            .filter(|(key, _)| !s.contains(*key))
            .map(|(key, ideal)| {
                (key.clone(), characters.iter().map(|c| character_value(k, &c.delta, ideal)).collect())
            })
            .collect();
        SieveContext { s, characters: characters.to_vec(), values }
    }

    pub fn characters(&self) -> &[QuadraticCharacter] {
        &self.characters
    }

    pub fn value(&self, character: usize, key: &PrimeKey) -> Option<i8> {
        self.values.get(key).map(|v| v[character])
    }

    pub fn analyze(&self, f: &EigenformRecord) -> Result<FormVerdict, ElimError> {
        if f.is_base_field_rational() {
            Ok(rational_form_analysis(self, f))
        } else {
            nonrational_form_bound(&self.s, f)
        }
    }
}

fn max3(a: BigUint, b: BigUint, c: BigUint) -> BigUint {
    a.max(b).max(c)
}

/// Bound from the smallest covered prime outside `S` with `a_l` irrational.
pub fn nonrational_form_bound(s: &BTreeSet<PrimeKey>, f: &EigenformRecord) -> Result<FormVerdict, ElimError> {
    if f.is_base_field_rational() {
        return Err(ElimError::RationalForm(f.label.clone()));
    }
    let hf = &f.hecke_field;
    let chosen = f
        .eigenvalues
        .iter()
        .find(|(key, a)| !s.contains(*key) && !hf.is_rational_element(a));
    let Some((key, a)) = chosen else {
        return Ok(FormVerdict {
            label: f.label.clone(),
            outcome: Outcome::InconclusiveDataExhausted,
            contribution: BigUint::zero(),
            nonrational: None,
            twists: Vec::new(),
            warnings: alloc::vec![String::from("no covered prime outside S has an irrational eigenvalue")],
        });
    };
    let n = key.norm;
    let bb = arith::isqrt_u64(4 * n);
    let mut good_factors = Vec::with_capacity(2 * bb as usize + 1);
    let mut good = BigInt::from(1);
    for t in -(bb as i64)..=(bb as i64) {
        let v = hf.norm(&hf.sub_int(a, &BigInt::from(t)));
        if v.is_zero() {
            return Err(ElimError::ZeroFactor { label: f.label.clone(), prime: format!("{key}") });
        }
        good *= &v;
        good_factors.push(v);
    }
    let n1 = BigInt::from(n) + 1;
    let m1 = hf.norm(&hf.sub_int(a, &n1));
    let m2 = hf.norm(&hf.sub_int(a, &(-&n1)));
    if m1.is_zero() || m2.is_zero() {
        return Err(ElimError::ZeroFactor { label: f.label.clone(), prime: format!("{key}") });
    }
    let mult = (&m1 * &m2).abs().magnitude().clone();
    let good_product = good.magnitude().clone();
    let contribution = max3(BigUint::from(n), good_product.clone(), mult.clone());
    Ok(FormVerdict {
        label: f.label.clone(),
        outcome: Outcome::EliminatedNonrational,
        contribution,
        nonrational: Some(NonrationalWitness {
            prime: key.clone(),
            norm: n,
            box_bound: bb,
            good_factors,
            good_product,
            mult_factors: [m1, m2],
            mult_product: mult,
        }),
        twists: Vec::new(),
        warnings: Vec::new(),
    })
}

/// CM test or twist-mismatch bound against every character.
pub fn rational_form_analysis(ctx: &SieveContext, f: &EigenformRecord) -> FormVerdict {
    let mut twists = Vec::with_capacity(ctx.characters.len());
    let covered: Vec<(&PrimeKey, BigInt)> = f
        .eigenvalues
        .iter()
        .filter(|(key, _)| !ctx.s.contains(*key))
        .map(|(key, a)| (key, a[0].clone()))
        .collect();
    for (ci, c) in ctx.characters.iter().enumerate() {
        let mut checked = 0usize;
        let mut max_norm = 0u64;
        let mut mismatch = None;
        for (key, a) in covered.iter() {
            let v = ctx.value(ci, key).unwrap_or(0);
            if v == 0 {
                continue;
            }
            checked += 1;
            max_norm = max_norm.max(key.norm);
            if v == -1 && !a.is_zero() {
                let n = BigInt::from(key.norm);
                let good = (BigInt::from(2) * a).magnitude().clone();
                let n1 = &n + 1;
                let mult: BigInt = &n1 * &n1 - a * a;
                let mult = mult.magnitude().clone();
                let contribution = max3(BigUint::from(key.norm), good.clone(), mult.clone());
                mismatch = Some(TwistWitness {
                    prime: (*key).clone(),
                    norm: key.norm,
                    a: a.clone(),
                    good,
                    mult,
                    contribution,
                });
                break;
            }
        }
        let check = match mismatch {
            Some(w) => CharacterCheck::Mismatch(w),
            None if checked > 0 => CharacterCheck::CmConsistent { checked, max_norm },
            None => CharacterCheck::Exhausted,
        };
        twists.push((c.label.clone(), check));
    }

    let mut warnings = Vec::new();
    if f.is_degenerate() {
        warnings.push(String::from("degenerate data: every stored eigenvalue is zero"));
    }
    let contribution = twists
        .iter()
        .filter_map(|(_, c)| match c {
            CharacterCheck::Mismatch(w) => Some(w.contribution.clone()),
            _ => None,
        })
        .max()
        .unwrap_or_else(BigUint::zero);
    let cm = twists.iter().find(|(_, c)| matches!(c, CharacterCheck::CmConsistent { .. }));
    let outcome = if let Some((label, CharacterCheck::CmConsistent { checked, max_norm })) = cm {
        warnings.push(format!(
            "CM by {label} certified up to data coverage: {checked} primes checked, largest norm {max_norm}"
        ));
        Outcome::SurvivesCm { character: label.clone() }
    } else if ctx.characters.is_empty() {
        warnings.push(String::from("no quadratic characters available"));
        Outcome::InconclusiveDataExhausted
    } else if twists.iter().any(|(_, c)| matches!(c, CharacterCheck::Exhausted)) {
        for (label, c) in twists.iter() {
            if matches!(c, CharacterCheck::Exhausted) {
                warnings.push(format!("character {label}: no covered prime outside S with nonzero value"));
            }
        }
        Outcome::InconclusiveDataExhausted
    } else {
        Outcome::EliminatedTwistMismatch
    };
    let contribution = if matches!(outcome, Outcome::SurvivesCm { .. }) { BigUint::zero() } else { contribution };
    FormVerdict { label: f.label.clone(), outcome, contribution, nonrational: None, twists, warnings }
}
