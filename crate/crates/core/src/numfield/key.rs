use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use super::FieldError;

/// Stable prime-ideal key `"<residue_char>.<norm>.<index>"`.
///
/// Ordering is by norm, then residue characteristic, then index, which is
/// the order in which the sieve scans primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeKey {
    pub residue_char: u64,
    pub norm: u64,
    pub index: u32,
}

impl PrimeKey {
    /// Residue degree implied by the key.
    pub fn residue_degree(&self) -> u32 {
        let mut n = self.norm;
        let mut f = 0;
        while n > 1 && n % self.residue_char == 0 {
            n /= self.residue_char;
            f += 1;
        }
        f
    }
}

impl Ord for PrimeKey {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.norm, self.residue_char, self.index).cmp(&(other.norm, other.residue_char, other.index))
    }
}

impl PartialOrd for PrimeKey {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.residue_char, self.norm, self.index)
    }
}

impl FromStr for PrimeKey {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadPrimeKey(String::from(s));
        let mut parts = s.split('.');
        let (Some(q), Some(n), Some(i), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let parse = |t: &str| -> Result<u64, FieldError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) || (t.len() > 1 && t.starts_with('0')) {
                return Err(bad());
            }
            t.parse::<u64>().map_err(|_| bad())
        };
        let q = parse(q)?;
        let n = parse(n)?;
        let i = parse(i)?;
        if !crate::arith::is_prime_u64(q) || i == 0 || i > u32::MAX as u64 {
            return Err(bad());
        }
        let key = PrimeKey { residue_char: q, norm: n, index: i as u32 };
        let f = key.residue_degree();
        if f == 0 || q.checked_pow(f) != Some(n) {
            return Err(bad());
        }
        Ok(key)
    }
}
