//! Rational-integer helpers: primality, factorization, residue symbols.

use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Bound for trial division before switching to Pollard's rho.
const TRIAL_LIMIT: u64 = 1 << 16;

/// Iteration budget per Pollard-Brent attempt.
const RHO_BUDGET: u64 = 1 << 20;

/// Floor of the square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let m = n.magnitude();
    let r = m.sqrt();
    &r * &r == *m
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut q = 2u64;
    while q * q <= m {
        if m % q == 0 {
            m /= q;
            if m % q == 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigUint::from(n))
}

/// Miller-Rabin with the first 25 primes as bases. Deterministic below
/// 3.3 * 10^24, and a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in SMALL_PRIMES.iter() {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Result of [`factor`]: proven prime factors with multiplicity, plus any
/// composite cofactors the rho budget could not split.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(BigUint, u32)>,
    pub unfactored: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// Largest prime factor, or an unsplit cofactor when that is larger
    /// (an upper bound on every prime factor it hides).
    pub fn largest_factor_bound(&self) -> Option<BigUint> {
        self.primes
            .iter()
            .map(|(p, _)| p)
            .chain(self.unfactored.iter())
            .max()
            .cloned()
    }

    pub fn prime_list(&self) -> Vec<BigUint> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Factor `|n|`. Zero and one factor as the empty product.
pub fn factor(n: &BigUint) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut m = n.clone();
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut q = 2u64;
    while q < TRIAL_LIMIT {
        let qb = BigUint::from(q);
        if &qb * &qb > m {
            break;
        }
        let mut e = 0;
        while (&m % &qb).is_zero() {
            m /= &qb;
            e += 1;
        }
        if e > 0 {
            primes.push((qb, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) || c < BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) {
            // Below TRIAL_LIMIT^2 trial division already proved primality.
            push_prime(&mut primes, c);
            continue;
        }
        match pollard_brent(&c) {
            Some(f) => {
                let g = &c / &f;
                stack.push(f);
                stack.push(g);
            }
            None => out.unfactored.push(c),
        }
    }
    primes.sort();
    out.primes = primes;
    out.unfactored.sort();
    out
}

fn push_prime(primes: &mut Vec<(BigUint, u32)>, p: BigUint) {
    if let Some(entry) = primes.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += 1;
    } else {
        primes.push((p, 1));
    }
}

fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c0 in 1u32..20 {
        let c = BigUint::from(c0);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        while g.is_one() && iters < RHO_BUDGET {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = core::cmp::min(128, r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            iters += r;
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Some(g);
        }
    }
    None
}

/// Kronecker symbol `(a | n)` for `n >= 0`.
pub fn kronecker(a: &BigInt, n: u64) -> i8 {
    if n == 0 {
        return if a.magnitude().is_one() { 1 } else { 0 };
    }
    let mut n = n;
    let mut result: i8 = 1;
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        let a8 = a.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
        if a8 % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
    }
    let a_mod = a.mod_floor(&BigInt::from(n)).to_u64().unwrap_or(0);
    result * jacobi(a_mod, n)
}

/// Jacobi symbol for odd positive `n`.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t: i8 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let g = BigInt::from(a).extended_gcd(&BigInt::from(p));
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&BigInt::from(p)).to_u64()
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = least_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1).unwrap_or(0)
}

/// Distinct prime divisors of a `u64`, ascending.
pub fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least generator of `F_p^*`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors_u64(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(0)
}

/// Exact power `base^exp` over the integers.
pub fn big_pow(base: &BigUint, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigUint>) -> Option<BigUint> {
    let mut it = values.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, v| acc.lcm(v)))
}

/// `(x, sign)` split of a signed integer.
pub fn split_sign(x: &BigInt) -> (BigUint, bool) {
    (x.magnitude().clone(), x.sign() == Sign::Minus)
}

/// Multiplicity of the prime `p` in `n` (`n != 0`).
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut m = n.clone();
    let mut e = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    e
}
