//! Eigenform dataset files.
//!
//! ```json
//! { "field": "2.2.5.1",
//!   "primes": { "11.11.1": [[11, 0], [3, 1]] },
//!   "forms": [ { "label": "f", "level_hnf": [[1, 0], [0, 1]], "level_norm": 1,
//!                "weight": [2, 2], "hecke_poly": [-2, 0, 1],
//!                "eigenvalues": { "11.11.1": [1, 1] } } ] }
//! ```
//!
//! `primes` is optional and pins the HNF behind each key. The canonical
//! serialization re-emits a validated dataset: forms sorted by label, every
//! referenced prime listed, parallel weight written once per embedding.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serre_core::forms::{validate_dataset, FormDataset, FormInput, Provenance};
use serre_core::numfield::NumberField;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::json::{self, Int};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub label: String,
    pub level_hnf: Vec<Vec<Int>>,
    pub level_norm: Int,
    pub weight: Vec<i64>,
    pub hecke_poly: Vec<Int>,
    pub eigenvalues: BTreeMap<String, Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub primes: BTreeMap<String, Vec<Vec<Int>>>,
    pub forms: Vec<FormFile>,
}

impl DatasetFile {
    pub fn empty(field: &str) -> Self {
        DatasetFile { field: field.to_string(), primes: BTreeMap::new(), forms: Vec::new() }
    }
}

pub fn parse(bytes: &[u8]) -> Result<DatasetFile> {
    serde_json::from_slice(bytes).map_err(|e| Error::json("dataset schema", e))
}

pub fn validate(k: &NumberField, file: &DatasetFile, provenance: Provenance) -> Result<FormDataset> {
    let mut inputs = Vec::with_capacity(file.forms.len());
    for f in file.forms.iter() {
        let level_norm = json::to_biguint(&f.level_norm)
            .ok_or_else(|| Error::Schema(format!("form {}: level_norm must be non-negative", f.label)))?;
        inputs.push(FormInput {
            label: f.label.clone(),
            level_hnf: json::matrix(&f.level_hnf),
            level_norm,
            weight: f.weight.clone(),
            hecke_poly: json::ints(&f.hecke_poly),
            eigenvalues: f.eigenvalues.iter().map(|(k, v)| (k.clone(), json::ints(v))).collect(),
        });
    }
    let primes = file.primes.iter().map(|(k, v)| (k.clone(), json::matrix(v))).collect();
    Ok(validate_dataset(k, &file.field, &primes, &inputs, provenance)?)
}

/// Canonical file form of a validated dataset.
pub fn to_file(k: &NumberField, d: &FormDataset) -> DatasetFile {
    DatasetFile {
        field: d.field_label.clone(),
        primes: d.primes.iter().map(|(key, p)| (key.to_string(), json::to_matrix(p.hnf()))).collect(),
        forms: d
            .records
            .iter()
            .map(|r| FormFile {
                label: r.label.clone(),
                level_hnf: json::to_matrix(r.level.hnf()),
                level_norm: Int::from(r.level_norm.clone()),
                weight: vec![2; k.degree()],
                hecke_poly: json::to_ints(r.hecke_field.poly()),
                eigenvalues: r.eigenvalues.iter().map(|(key, v)| (key.to_string(), json::to_ints(v))).collect(),
            })
            .collect(),
    }
}

pub fn to_json(file: &DatasetFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("dataset serializes");
    s.push('\n');
    s
}

pub fn serialize(k: &NumberField, d: &FormDataset) -> String {
    to_json(&to_file(k, d))
}

/// Parse, validate and re-emit.
pub fn canonicalize(k: &NumberField, bytes: &[u8]) -> Result<String> {
    let d = validate(k, &parse(bytes)?, Provenance::Empty)?;
    Ok(serialize(k, &d))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A dataset loaded from disk with the digest of its bytes.
pub struct Loaded {
    pub dataset: FormDataset,
    pub sha256: String,
}

pub fn load_dataset(k: &NumberField, path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let file = parse(&bytes).map_err(|e| match e {
        Error::Json { source, .. } => Error::json(format!("{}: dataset schema", path.display()), source),
        other => other,
    })?;
    let dataset = validate(k, &file, Provenance::File { path: path.display().to_string() })?;
    Ok(Loaded { dataset, sha256: sha256_hex(&bytes) })
}
