//! Constant assembly: irreducibility threshold, per-form sieve verdicts and
//! the final `C_{K,S}`.
//!
//! [`Sieve::new`] does the per-field work once; [`Sieve::analyze`] is
//! independent per form and may run on any thread; [`Sieve::assemble`]
//! folds verdicts in label order.

mod characters;
mod sieve;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigUint;

pub use characters::{
    character_value, enumerate_characters, is_square_quadratic, CharacterSet, PrunedCharacter, QuadraticCharacter,
    MAX_CHARACTER_GENERATORS,
};
pub use sieve::{
    nonrational_form_bound, rational_form_analysis, CharacterCheck, FormVerdict, NonrationalWitness, Outcome,
    SieveContext, TwistWitness,
};

use crate::forms::{EigenformRecord, FormDataset};
use crate::irreducibility::{irreducibility_threshold, IrreducibilityBound, IrreducibilityError};
use crate::levels::{level_data, LevelData, LevelError};
use crate::numfield::{FieldError, IntegralIdeal, NumberField, PrimeKey};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ElimError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Irreducibility(#[from] IrreducibilityError),
    #[error("{0} character generators exceed the limit of {max}", max = MAX_CHARACTER_GENERATORS)]
    TooManyCharacterGenerators(usize),
    #[error("form {0} has rational eigenvalues; the non-rational bound does not apply")]
    RationalForm(String),
    #[error("form {label}: Norm(a - t) vanishes at {prime}, so a_l is rational there")]
    ZeroFactor { label: String, prime: String },
    #[error("dataset is for field {got}, expected {expected}")]
    FieldMismatch { expected: String, got: String },
}

/// Where the final constant comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantSource {
    IrreducibilityThreshold,
    Form(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredForm {
    pub label: String,
    pub level_norm: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub label: String,
    pub character: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub field_label: String,
    pub degree: usize,
    pub class_number: u64,
    pub s: Vec<PrimeKey>,
    pub irreducibility: IrreducibilityBound,
    pub levels: LevelData,
    pub characters: CharacterSet,
    /// Primes covered by every analyzed form.
    pub coverage: Vec<PrimeKey>,
    pub verdicts: Vec<FormVerdict>,
    /// Forms whose level does not divide `M`.
    pub filtered: Vec<FilteredForm>,
    pub constant: BigUint,
    pub constant_source: ConstantSource,
    pub conditional: bool,
    pub missing_data: Vec<String>,
    pub survivors: Vec<Survivor>,
    pub notices: Vec<String>,
}

pub const GALOIS_NOTICE: &str = "K is required to be Galois; non-Galois totally real fields are not handled";
pub const CM_NOTICE: &str =
    "CM survivors are certified only up to data coverage; identifying the CM elliptic curves is not performed";

/// Field-level data shared by every form of one run.
pub struct Sieve<'a> {
    k: &'a NumberField,
    s: Vec<(PrimeKey, IntegralIdeal)>,
    irr: IrreducibilityBound,
    levels: LevelData,
    characters: CharacterSet,
    ctx: SieveContext,
    dataset: &'a FormDataset,
    eligible: Vec<usize>,
    filtered: Vec<FilteredForm>,
}

impl<'a> Sieve<'a> {
    pub fn new(
        k: &'a NumberField,
        s: &[(PrimeKey, IntegralIdeal)],
        dataset: &'a FormDataset,
    ) -> Result<Self, ElimError> {
        if dataset.field_label != k.label() {
            return Err(ElimError::FieldMismatch { expected: k.label().into(), got: dataset.field_label.clone() });
        }
        let levels = level_data(k, s)?;
        let irr = irreducibility_threshold(k, s)?;
        let characters = enumerate_characters(k, s)?;
        let ctx = SieveContext::new(k, s, &characters.characters, &dataset.primes);
        let mut eligible = Vec::new();
        let mut filtered = Vec::new();
        for (i, r) in dataset.records.iter().enumerate() {
            if r.level.divides(&levels.m) {
                eligible.push(i);
            } else {
                filtered.push(FilteredForm { label: r.label.clone(), level_norm: r.level_norm.clone() });
            }
        }
        Ok(Sieve { k, s: s.to_vec(), irr, levels, characters, ctx, dataset, eligible, filtered })
    }

    pub fn field(&self) -> &NumberField {
        self.k
    }

    pub fn irreducibility(&self) -> &IrreducibilityBound {
        &self.irr
    }

    pub fn levels(&self) -> &LevelData {
        &self.levels
    }

    pub fn characters(&self) -> &CharacterSet {
        &self.characters
    }

    /// Forms with level dividing `M`, in label order.
    pub fn forms(&self) -> impl ExactSizeIterator<Item = &EigenformRecord> + '_ {
        self.eligible.iter().map(|&i| &self.dataset.records[i])
    }

    pub fn analyze(&self, f: &EigenformRecord) -> Result<FormVerdict, ElimError> {
        self.ctx.analyze(f)
    }

    /// Every eligible form, sequentially.
    pub fn analyze_all(&self) -> Result<Vec<FormVerdict>, ElimError> {
        self.forms().map(|f| self.analyze(f)).collect()
    }

    pub fn run(self) -> Result<BoundReport, ElimError> {
        let verdicts = self.analyze_all()?;
        Ok(self.assemble(verdicts))
    }

    /// Fold verdicts into the report; `verdicts` may arrive in any order.
    pub fn assemble(self, verdicts: Vec<FormVerdict>) -> BoundReport {
        assemble_constant(self, verdicts)
    }
}

fn assemble_constant(sv: Sieve<'_>, mut verdicts: Vec<FormVerdict>) -> BoundReport {
    verdicts.sort_by(|a, b| a.label.cmp(&b.label));
    let mut constant = sv.irr.threshold.clone();
    let mut constant_source = ConstantSource::IrreducibilityThreshold;
    for v in verdicts.iter() {
        if v.contribution > constant {
            constant = v.contribution.clone();
            constant_source = ConstantSource::Form(v.label.clone());
        }
    }
    let survivors = verdicts
        .iter()
        .filter_map(|v| match &v.outcome {
            Outcome::SurvivesCm { character } => Some(Survivor { label: v.label.clone(), character: character.clone() }),
            _ => None,
        })
        .collect::<Vec<_>>();
    let s_keys: BTreeSet<&PrimeKey> = sv.s.iter().map(|(k, _)| k).collect();
    let mut missing_data = Vec::new();
    for v in verdicts.iter().filter(|v| v.outcome == Outcome::InconclusiveDataExhausted) {
        let rational = sv.dataset.records.iter().any(|r| r.label == v.label && r.is_base_field_rational());
        let need = if !rational {
            String::from("an eigenvalue outside Q at some prime outside S")
        } else if v.twists.is_empty() {
            String::from("a quadratic character to test against")
        } else {
            let exhausted: Vec<&str> = v
                .twists
                .iter()
                .filter(|(_, c)| *c == CharacterCheck::Exhausted)
                .map(|(l, _)| l.as_str())
                .collect();
            format!("eigenvalues at primes outside S where {} take nonzero values", exhausted.join(", "))
        };
        missing_data.push(format!("{}: {need}", v.label));
    }
    let conditional = !missing_data.is_empty();

    let coverage = {
        let mut common: Option<BTreeSet<PrimeKey>> = None;
        for f in sv.forms() {
            let keys: BTreeSet<PrimeKey> = f.eigenvalues.keys().cloned().collect();
            common = Some(match common {
                None => keys,
                Some(c) => c.intersection(&keys).cloned().collect(),
            });
        }
        common.unwrap_or_default().into_iter().collect()
    };

    let mut notices = alloc::vec![String::from(GALOIS_NOTICE)];
    notices.extend(sv.characters.notices.iter().cloned());
    if !sv.filtered.is_empty() {
        notices.push(format!("{} form(s) skipped: level does not divide M", sv.filtered.len()));
    }
    if !survivors.is_empty() {
        notices.push(String::from(CM_NOTICE));
    }
    if !s_keys.is_empty() {
        notices.push(String::from("primes of S are never used as sieve primes"));
    }

    BoundReport {
        field_label: sv.k.label().into(),
        degree: sv.k.degree(),
        class_number: sv.k.class_number(),
        s: sv.s.iter().map(|(k, _)| k.clone()).collect(),
        irreducibility: sv.irr,
        levels: sv.levels,
        characters: sv.characters,
        coverage,
        verdicts,
        filtered: sv.filtered,
        constant,
        constant_source,
        conditional,
        missing_data,
        survivors,
        notices,
    }
}
