//! Additive level `M = prod l^{2 + 6 ord_l(2) + 3 ord_l(3)}` and the
//! character conductor bound `prod l^{1 + 2 ord_l(2)}` over `l in S`.

use alloc::format;
use alloc::string::String;
use num_bigint::BigUint;

use crate::numfield::{IntegralIdeal, NumberField, PrimeKey};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LevelError {
    #[error("prime {0} appears more than once in S")]
    DuplicatePrime(String),
    #[error("{0} carries no prime data (residue characteristic and ramification index)")]
    NotAPrime(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelData {
    pub m: IntegralIdeal,
    pub m_norm: BigUint,
    pub character_bound: IntegralIdeal,
    pub character_bound_norm: BigUint,
}

/// `ord_l(n)` for a rational prime `n`: the ramification index when `l`
/// lies over `n`, else zero.
pub fn ord(ideal: &IntegralIdeal, n: u64) -> Result<u32, LevelError> {
    let d = ideal.prime().ok_or_else(|| LevelError::NotAPrime(format!("ideal of norm {}", ideal.norm())))?;
    Ok(if d.residue_char == n { d.e } else { 0 })
}

pub fn additive_exponent(ideal: &IntegralIdeal) -> Result<u32, LevelError> {
    Ok(2 + 6 * ord(ideal, 2)? + 3 * ord(ideal, 3)?)
}

pub fn character_exponent(ideal: &IntegralIdeal) -> Result<u32, LevelError> {
    Ok(1 + 2 * ord(ideal, 2)?)
}

fn check_distinct(s: &[(PrimeKey, IntegralIdeal)]) -> Result<(), LevelError> {
    for (i, (k, _)) in s.iter().enumerate() {
        if s[..i].iter().any(|(k2, _)| k2 == k) {
            return Err(LevelError::DuplicatePrime(format!("{k}")));
        }
    }
    Ok(())
}

fn power_product(
    k: &NumberField,
    s: &[(PrimeKey, IntegralIdeal)],
    exponent: fn(&IntegralIdeal) -> Result<u32, LevelError>,
) -> Result<IntegralIdeal, LevelError> {
    check_distinct(s)?;
    let mut acc = IntegralIdeal::unit(k);
    for (key, ideal) in s {
        let e = exponent(ideal).map_err(|_| LevelError::NotAPrime(format!("{key}")))?;
        acc = acc.mul(k, &ideal.pow(k, e as u64));
    }
    Ok(acc)
}

pub fn additive_level(k: &NumberField, s: &[(PrimeKey, IntegralIdeal)]) -> Result<IntegralIdeal, LevelError> {
    power_product(k, s, additive_exponent)
}

pub fn character_conductor_bound(
    k: &NumberField,
    s: &[(PrimeKey, IntegralIdeal)],
) -> Result<IntegralIdeal, LevelError> {
    power_product(k, s, character_exponent)
}

pub fn level_data(k: &NumberField, s: &[(PrimeKey, IntegralIdeal)]) -> Result<LevelData, LevelError> {
    let m = additive_level(k, s)?;
    let c = character_conductor_bound(k, s)?;
    Ok(LevelData { m_norm: m.norm(), character_bound_norm: c.norm(), m, character_bound: c })
}
