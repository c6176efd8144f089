//! Field configuration documents and prime specs for `S`.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serre_core::arith;
use serre_core::numfield::{
    make_quadratic_field, FieldDescription, IntegralIdeal, NumberField, PrimeDescription, PrimeKey,
};

use crate::error::{Error, Result};
use crate::json::{self, Int};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeConfig {
    pub hnf: Vec<Vec<Int>>,
    pub residue_char: u64,
    pub e: u32,
    pub f: u32,
    /// Generator of `l^h` over the integral basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Int>>,
}

/// On-disk form of a [`FieldDescription`]. Polynomials are ascending,
/// `integral_basis` rows hold `[numerator, denominator]` pairs over the
/// power basis, and automorphism matrices act on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degree: usize,
    pub poly: Vec<Int>,
    pub integral_basis: Vec<Vec<[Int; 2]>>,
    pub mult_table: Vec<Vec<Vec<Int>>>,
    pub disc: Int,
    pub automorphisms: Vec<Vec<Vec<Int>>>,
    pub units: Vec<Vec<Int>>,
    pub class_number: u64,
    #[serde(default)]
    pub primes: Vec<PrimeConfig>,
}

impl FieldConfig {
    pub fn to_description(&self) -> Result<FieldDescription> {
        let mut basis = Vec::with_capacity(self.integral_basis.len());
        for (i, row) in self.integral_basis.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for [n, d] in row {
                if d.0.is_zero() {
                    return Err(Error::Schema(format!("integral_basis row {i}: zero denominator")));
                }
                r.push(BigRational::new(n.0.clone(), d.0.clone()));
            }
            basis.push(r);
        }
        Ok(FieldDescription {
            label: self.label.clone(),
            degree: self.degree,
            poly: json::ints(&self.poly),
            integral_basis: basis,
            mult_table: self.mult_table.iter().map(|m| json::matrix(m)).collect(),
            disc: self.disc.0.clone(),
            automorphisms: self.automorphisms.iter().map(|m| json::matrix(m)).collect(),
            units: self.units.iter().map(|u| json::ints(u)).collect(),
            class_number: self.class_number,
            primes: self
                .primes
                .iter()
                .map(|p| PrimeDescription {
                    hnf: json::matrix(&p.hnf),
                    residue_char: p.residue_char,
                    e: p.e,
                    f: p.f,
                    generator: p.generator.as_ref().map(|g| json::ints(g)),
                })
                .collect(),
        })
    }

    pub fn from_description(d: &FieldDescription) -> Self {
        let rat = |q: &BigRational| [Int(q.numer().clone()), Int(q.denom().clone())];
        FieldConfig {
            label: d.label.clone(),
            degree: d.degree,
            poly: json::to_ints(&d.poly),
            integral_basis: d.integral_basis.iter().map(|r| r.iter().map(rat).collect()).collect(),
            mult_table: d.mult_table.iter().map(|m| json::to_matrix(m)).collect(),
            disc: Int(d.disc.clone()),
            automorphisms: d.automorphisms.iter().map(|m| json::to_matrix(m)).collect(),
            units: d.units.iter().map(|u| json::to_ints(u)).collect(),
            class_number: d.class_number,
            primes: d
                .primes
                .iter()
                .map(|p| PrimeConfig {
                    hnf: json::to_matrix(&p.hnf),
                    residue_char: p.residue_char,
                    e: p.e,
                    f: p.f,
                    generator: p.generator.as_ref().map(|g| json::to_ints(g)),
                })
                .collect(),
        }
    }
}

pub fn parse_field_config(bytes: &[u8]) -> Result<NumberField> {
    let cfg: FieldConfig = serde_json::from_slice(bytes).map_err(|e| Error::json("field config", e))?;
    Ok(NumberField::from_description(&cfg.to_description()?)?)
}

pub fn load_field_config(path: &Path) -> Result<NumberField> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_field_config(&bytes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Quadratic(i64),
    Config(PathBuf),
}

impl FieldSpec {
    pub fn build(&self) -> Result<NumberField> {
        match self {
            FieldSpec::Quadratic(m) => Ok(make_quadratic_field(*m)?),
            FieldSpec::Config(p) => load_field_config(p),
        }
    }
}

/// Split a comma-separated list of prime specs, keeping commas inside
/// brackets.
pub fn split_prime_specs(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in list.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Resolve one spec: `q` (every prime above `q`), `q.i` (the `i`-th prime
/// above `q`, from 1), a full key `q.N.i`, or a JSON HNF `[[..],..]`.
pub fn resolve_prime_spec(k: &NumberField, spec: &str) -> Result<Vec<(PrimeKey, IntegralIdeal)>> {
    let bad = |reason: String| Error::PrimeSpec { spec: spec.to_string(), reason };
    if spec.starts_with('[') {
        let hnf: Vec<Vec<Int>> = serde_json::from_str(spec).map_err(|e| bad(e.to_string()))?;
        let ideal = IntegralIdeal::from_hnf(k, json::matrix(&hnf)).map_err(bad)?;
        let norm = ideal.norm().to_u64().ok_or_else(|| bad("norm too large".into()))?;
        let q = *arith::prime_divisors_u64(norm).first().ok_or_else(|| bad("unit ideal".into()))?;
        let found = k.factor_rational_prime(q)?.into_iter().find(|(_, p)| p.hnf() == ideal.hnf());
        return found.map(|x| vec![x]).ok_or_else(|| bad("not a prime ideal of the field".into()));
    }
    let parts: Vec<&str> = spec.split('.').collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("`{s}` is not a positive integer")));
    match parts.len() {
        1 => {
            let q = num(parts[0])?;
            Ok(k.factor_rational_prime(q)?)
        }
        2 => {
            let q = num(parts[0])?;
            let i = num(parts[1])? as usize;
            let mut primes = k.factor_rational_prime(q)?;
            if i == 0 || i > primes.len() {
                return Err(bad(format!("{q} has {} prime(s) above it", primes.len())));
            }
            Ok(vec![primes.remove(i - 1)])
        }
        3 => {
            let key: PrimeKey = spec.parse().map_err(|_| bad("malformed prime key".into()))?;
            let ideal = k.prime_by_key(&key)?;
            Ok(vec![(key, ideal)])
        }
        _ => Err(bad("expected q, q.i, q.N.i or an HNF".into())),
    }
}

/// Resolve every spec and sort by key. Repeated primes are kept so that
/// level computation reports them.
pub fn resolve_s(k: &NumberField, specs: &[String]) -> Result<Vec<(PrimeKey, IntegralIdeal)>> {
    let mut out = Vec::new();
    for s in specs {
        out.extend(resolve_prime_spec(k, s)?);
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

pub fn field_json(k: &NumberField) -> String {
    let cfg = FieldConfig::from_description(&k.to_description());
    let mut s = serde_json::to_string_pretty(&cfg).expect("field config serializes");
    s.push('\n');
    s
}

pub fn coords_string(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
