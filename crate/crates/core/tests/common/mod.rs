#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serre_core::forms::{validate_dataset, FormDataset, FormError, FormInput, Provenance};
use serre_core::numfield::NumberField;

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Level-one form with eigenvalues `(key, coords)`.
pub fn form(label: &str, hecke_poly: &[i64], eigen: &[(&str, &[i64])]) -> FormInput {
    FormInput {
        label: label.into(),
        level_hnf: vec![ints(&[1, 0]), ints(&[0, 1])],
        level_norm: BigUint::from(1u32),
        weight: vec![2],
        hecke_poly: ints(hecke_poly),
        eigenvalues: eigen.iter().map(|(k, v)| (k.to_string(), ints(v))).collect(),
    }
}

pub fn dataset(k: &NumberField, forms: &[FormInput]) -> Result<FormDataset, FormError> {
    validate_dataset(k, k.label(), &BTreeMap::new(), forms, Provenance::Empty)
}
