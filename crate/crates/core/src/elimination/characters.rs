use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ElimError;
use crate::arith;
use crate::numfield::{AlgebraicInteger, IntegralIdeal, NumberField, PrimeKey};

/// Largest generator count for the square-class enumeration.
pub const MAX_CHARACTER_GENERATORS: usize = 20;

/// Character of `K(sqrt delta)/K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCharacter {
    pub label: String,
    pub delta: AlgebraicInteger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedCharacter {
    pub label: String,
    pub delta: AlgebraicInteger,
    /// Prime outside `S` and above an odd rational prime where `delta` has
    /// odd valuation.
    pub witness: PrimeKey,
    pub valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSet {
    pub generators: Vec<(String, AlgebraicInteger)>,
    pub characters: Vec<QuadraticCharacter>,
    pub pruned: Vec<PrunedCharacter>,
    /// `(label, label of the earlier class it equals)`.
    pub duplicates: Vec<(String, String)>,
    pub notices: Vec<String>,
}

/// Square classes of `<-1, eps_1, ..., eps_{d-1}, pi_l (l in S)>` where `pi_l`
/// generates `l^h`.
pub fn enumerate_characters(k: &NumberField, s: &[(PrimeKey, IntegralIdeal)]) -> Result<CharacterSet, ElimError> {
    let mut generators: Vec<(String, AlgebraicInteger)> = vec![(String::from("-1"), k.neg(&k.one()))];
    for (i, u) in k.units().iter().enumerate() {
        generators.push((format!("eps{}", i + 1), u.clone()));
    }
    for (key, ideal) in s {
        let pi = k.principalize_prime(ideal)?;
        generators.push((format!("pi[{key}]"), pi));
    }
    let r = generators.len();
    if r > MAX_CHARACTER_GENERATORS {
        return Err(ElimError::TooManyCharacterGenerators(r));
    }
    let mut notices = Vec::new();
    if k.class_number() % 2 == 0 && !s.is_empty() {
        notices.push(format!(
            "class number {} is even: generators of l^h have even valuation at l, so characters ramified at primes of S are missed and the character set may be incomplete",
            k.class_number()
        ));
    }
    if !k.is_quadratic() {
        notices.push(String::from("square classes are not deduplicated for fields of degree > 2"));
    }
    let s_keys: Vec<&PrimeKey> = s.iter().map(|(key, _)| key).collect();

    let mut characters: Vec<QuadraticCharacter> = Vec::new();
    let mut pruned = Vec::new();
    let mut duplicates = Vec::new();
    for mask in 1u32..(1u32 << r) {
        let mut delta = k.one();
        let mut names = Vec::new();
        for (j, (name, g)) in generators.iter().enumerate() {
            if mask >> j & 1 == 1 {
                delta = k.mul(&delta, g);
                names.push(name.as_str());
            }
        }
        let label = names.join("*");
        if k.is_quadratic() {
            if is_square_quadratic(k, &delta) {
                duplicates.push((label, String::from("1")));
                continue;
            }
            if let Some(prev) = characters.iter().find(|c| is_square_quadratic(k, &k.mul(&c.delta, &delta))) {
                duplicates.push((label, prev.label.clone()));
                continue;
            }
        }
        if let Some((witness, valuation)) = odd_valuation_outside(k, &delta, &s_keys)? {
            pruned.push(PrunedCharacter { label, delta, witness, valuation });
            continue;
        }
        characters.push(QuadraticCharacter { label, delta });
    }
    Ok(CharacterSet { generators, characters, pruned, duplicates, notices })
}

/// A prime over an odd rational prime, outside `S`, where `delta` has odd
/// valuation. Only quadratic fields can factor arbitrary rational primes.
fn odd_valuation_outside(
    k: &NumberField,
    delta: &AlgebraicInteger,
    s: &[&PrimeKey],
) -> Result<Option<(PrimeKey, u32)>, ElimError> {
    if !k.is_quadratic() {
        return Ok(None);
    }
    let n = k.element_norm(delta);
    let f = arith::factor(n.magnitude());
    for (q, _) in f.primes.iter() {
        let Some(q) = q.to_u64() else { continue };
        if q == 2 {
            continue;
        }
        for (key, ideal) in k.factor_rational_prime(q)? {
            if s.contains(&&key) {
                continue;
            }
            let v = ideal.valuation(k, delta);
            if v % 2 == 1 {
                return Ok(Some((key, v)));
            }
        }
    }
    Ok(None)
}

/// `a` is a square in a quadratic field.
pub fn is_square_quadratic(k: &NumberField, a: &AlgebraicInteger) -> bool {
    if a.is_zero() {
        return true;
    }
    let n = k.element_norm(a);
    if n.is_negative() || !arith::is_square(&n) {
        return false;
    }
    let r = BigInt::from(arith::isqrt(n.magnitude()));
    let tr = k.trace(a);
    // a = g^2: tr(g)^2 = tr(a) + 2 N(g), N(g) = +-r, g = (a + N(g)) / tr(g).
    for ng in [r.clone(), -r.clone()] {
        let t2 = &tr + BigInt::from(2) * &ng;
        if t2.is_negative() || !arith::is_square(&t2) {
            continue;
        }
        let t = BigInt::from(arith::isqrt(t2.magnitude()));
        if t.is_zero() {
            // g^2 = -N(g) is rational; a is then rational too.
            if a.0.iter().skip(1).all(|c| c.is_zero()) {
                let c = &a.0[0];
                if c.is_positive() && arith::is_square(c) {
                    return true;
                }
                // c = v^2 disc / 4 or v^2 disc: test c * disc a square.
                let cd = c * k.disc();
                if cd.is_positive() && arith::is_square(&cd) {
                    return true;
                }
            }
            continue;
        }
        let num = k.add(a, &k.from_int(&ng));
        for tt in [t.clone(), -t.clone()] {
            if num.0.iter().all(|c| c.is_multiple_of(&tt)) {
                let g = AlgebraicInteger(num.0.iter().map(|c| c / &tt).collect());
                if k.mul(&g, &g) == *a {
                    return true;
                }
            }
        }
    }
    false
}

/// `+1` if `delta` is a nonzero square mod `q`, `-1` if not, `0` when `delta`
/// lies in `q` or `q` has residue characteristic 2.
pub fn character_value(k: &NumberField, delta: &AlgebraicInteger, q: &IntegralIdeal) -> i8 {
    let Some(data) = q.prime() else { return 0 };
    if data.residue_char == 2 || q.contains(delta) {
        return 0;
    }
    let n = q.norm();
    let e = (n - 1u32) / 2u32;
    let x = q.pow_mod_big(k, delta, &e);
    if x == q.reduce(&k.one()) {
        1
    } else if x == q.reduce(&k.neg(&k.one())) {
        -1
    } else {
        debug_assert!(false, "Euler criterion produced neither 1 nor -1");
        0
    }
}
