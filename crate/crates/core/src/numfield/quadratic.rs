//! Real quadratic fields `Q(sqrt m)`: construction, fundamental unit by
//! continued fractions, class number and principalization by cycles of
//! reduced ideals.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{key_primes_above, AlgebraicInteger, FieldError, FieldKind, IntegralIdeal, NumberField, PrimeKey};
use crate::arith;

/// Cap on reduction steps; cycles have length `O(sqrt(D) log D)`.
const MAX_STEPS: usize = 50_000_000;

struct Shape {
    /// `m = 1 (mod 4)`.
    one_mod_four: bool,
    /// Field discriminant.
    disc: u64,
    /// Trace and norm of `omega`.
    t: i64,
    n: BigInt,
}

fn shape(m: u64) -> Shape {
    if m % 4 == 1 {
        Shape { one_mod_four: true, disc: m, t: 1, n: (BigInt::one() - BigInt::from(m)) / 4 }
    } else {
        Shape { one_mod_four: false, disc: 4 * m, t: 0, n: -BigInt::from(m) }
    }
}

fn check_m(m: i64) -> Result<u64, FieldError> {
    if m < 0 {
        return Err(FieldError::NotTotallyReal);
    }
    if m <= 1 {
        return Err(FieldError::DegenerateQuadratic(m));
    }
    let mu = m as u64;
    if !arith::is_squarefree(mu) {
        return Err(FieldError::NotSquarefree(mu));
    }
    if mu > u64::MAX / 8 {
        return Err(FieldError::Invalid(format!("m = {m} is too large")));
    }
    Ok(mu)
}

/// `Q(sqrt m)` with integral basis `{1, omega}`.
pub fn make_quadratic_field(m: i64) -> Result<NumberField, FieldError> {
    let m = check_m(m)?;
    let sh = shape(m);
    let z = BigInt::zero();
    let o = BigInt::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let integral_basis = if sh.one_mod_four {
        vec![vec![rat(1), rat(0)], vec![half.clone(), half]]
    } else {
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]
    };
    // omega^2 = t omega - n
    let w2 = vec![-sh.n.clone(), BigInt::from(sh.t)];
    let mult_table = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], w2],
    ];
    let sigma = if sh.one_mod_four {
        vec![vec![o.clone(), o.clone()], vec![z.clone(), -o.clone()]]
    } else {
        vec![vec![o.clone(), z.clone()], vec![z.clone(), -o.clone()]]
    };
    let unit = fundamental_unit(m as i64)?;
    let h = class_number_by_reduced_ideals(m as i64)?;
    Ok(NumberField {
        label: format!("2.2.{}.1", sh.disc),
        degree: 2,
        poly: vec![-BigInt::from(m), z.clone(), o.clone()],
        integral_basis,
        mult_table,
        disc: BigInt::from(sh.disc),
        automorphisms: vec![crate::linalg::identity(2), sigma],
        units: vec![unit],
        class_number: h,
        primes: Vec::new(),
        kind: FieldKind::Quadratic { m },
        one: AlgebraicInteger(vec![o, z]),
    })
}

/// Fundamental unit `> 1` over `{1, omega}`, from the first convergent
/// `p/q` of `omega` with `N(p - q omega) = +-1`.
pub fn fundamental_unit(m: i64) -> Result<AlgebraicInteger, FieldError> {
    let m = check_m(m)?;
    let sh = shape(m);
    let mb = BigInt::from(m);
    let s = BigInt::from(arith::isqrt_u64(m));
    let t = BigInt::from(sh.t);
    // omega = (P + sqrt m) / Q
    let (mut pp, mut qq) = if sh.one_mod_four {
        (BigInt::one(), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    for _ in 0..MAX_STEPS {
        let a = (&pp + &s).div_floor(&qq);
        let p = &a * &p1 + &p2;
        let q = &a * &q1 + &q2;
        let norm = &p * &p - &t * &p * &q + &sh.n * &q * &q;
        if norm.magnitude().is_one() {
            return Ok(AlgebraicInteger(vec![&p - &q * &t, q]));
        }
        p2 = core::mem::replace(&mut p1, p);
        q2 = core::mem::replace(&mut q1, q);
        let np = &a * &qq - &pp;
        let nq = (&mb - &np * &np) / &qq;
        pp = np;
        qq = nq;
    }
    Err(FieldError::Invalid(format!("no unit found for m = {m}")))
}

/// Primitive ideal `[a, (b + sqrt D)/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Form {
    a: i128,
    b: i128,
}

struct Reducer {
    d: i128,
    s: i128,
}

impl Reducer {
    fn new(disc: u64) -> Self {
        Reducer { d: disc as i128, s: arith::isqrt_u64(disc) as i128 }
    }

    /// `|sqrt D - 2a| < b < sqrt D`.
    fn is_reduced(&self, f: Form) -> bool {
        let Form { a, b } = f;
        if b <= 0 || b * b >= self.d {
            return false;
        }
        let l = self.d + 4 * a * a - b * b;
        l <= 0 || l * l < 16 * a * a * self.d
    }

    /// `rho(I) = lambda I` with `lambda = (b - sqrt D)/(2a)`.
    fn rho(&self, f: Form) -> Form {
        let c = (f.b * f.b - self.d) / (4 * f.a);
        let a2 = c.abs();
        let m2 = 2 * a2;
        let b2 = if a2 * a2 > self.d {
            let mut r = (-f.b).rem_euclid(m2);
            if r > a2 {
                r -= m2;
            }
            r
        } else {
            self.s - (self.s + f.b).rem_euclid(m2)
        };
        Form { a: a2, b: b2 }
    }

    /// Reduced ideal reached from `f`, with the steps taken.
    fn reduce(&self, mut f: Form) -> Result<(Form, Vec<Form>), FieldError> {
        let mut path = Vec::new();
        for _ in 0..MAX_STEPS {
            if self.is_reduced(f) {
                return Ok((f, path));
            }
            path.push(f);
            f = self.rho(f);
        }
        Err(FieldError::Invalid(String::from("ideal reduction did not terminate")))
    }

    fn cycle(&self, start: Form) -> Result<Vec<Form>, FieldError> {
        let mut out = vec![start];
        let mut f = self.rho(start);
        while f != start {
            out.push(f);
            if out.len() > MAX_STEPS {
                return Err(FieldError::Invalid(String::from("reduced cycle did not close")));
            }
            f = self.rho(f);
        }
        Ok(out)
    }
}

/// Class number as the number of cycles of reduced ideals met by primitive
/// ideals of norm at most `sqrt(D)/2`.
pub fn class_number_by_reduced_ideals(m: i64) -> Result<u64, FieldError> {
    let m = check_m(m)?;
    let sh = shape(m);
    let r = Reducer::new(sh.disc);
    let d = r.d;
    let mut seen: BTreeSet<Form> = BTreeSet::new();
    let mut classes = 0u64;
    let mut a: i128 = 1;
    while 4 * a * a <= d {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 || (b * b - d).rem_euclid(4 * a) != 0 {
                continue;
            }
            let (red, _) = r.reduce(Form { a, b })?;
            if seen.contains(&red) {
                continue;
            }
            classes += 1;
            seen.extend(r.cycle(red)?);
        }
        a += 1;
    }
    Ok(classes)
}

/// `x + y sqrt D` with rational `x, y`.
#[derive(Clone, Debug)]
struct QElt {
    x: BigRational,
    y: BigRational,
}

impl QElt {
    fn mul(&self, o: &QElt, d: &BigRational) -> QElt {
        QElt { x: &self.x * &o.x + d * &self.y * &o.y, y: &self.x * &o.y + &self.y * &o.x }
    }

    fn inv(&self, d: &BigRational) -> QElt {
        let n = &self.x * &self.x - d * &self.y * &self.y;
        QElt { x: &self.x / &n, y: -&self.y / &n }
    }
}

/// A generator of `ideal`, or `None` when it is not principal.
pub(super) fn principal_generator(
    k: &NumberField,
    m: u64,
    ideal: &IntegralIdeal,
) -> Result<Option<AlgebraicInteger>, FieldError> {
    let sh = shape(m);
    let h = ideal.hnf();
    let g = h[1][1].clone();
    let a = (&h[0][0] / &g).to_i128();
    let x = (&h[1][0] / &g).to_i128();
    let (Some(a), Some(x)) = (a, x) else {
        return Err(FieldError::Principalization(String::from("ideal too large")));
    };
    let form = Form { a, b: 2 * x + sh.t as i128 };
    let r = Reducer::new(sh.disc);
    let dq = BigRational::from_integer(BigInt::from(sh.disc));
    let lambda = |f: Form| QElt {
        x: BigRational::new(BigInt::from(f.b), BigInt::from(2 * f.a)),
        y: BigRational::new(BigInt::from(-1), BigInt::from(2 * f.a)),
    };
    let mut acc = QElt { x: BigRational::one(), y: BigRational::zero() };
    let mut f = form;
    let mut steps = 0usize;
    let mut cycle_start: Option<Form> = None;
    loop {
        if f.a == 1 {
            let gen = acc.inv(&dq);
            let gen = QElt { x: gen.x * BigRational::from_integer(g.clone()), y: gen.y * BigRational::from_integer(g.clone()) };
            let coords = to_coords(&gen, sh.one_mod_four).ok_or_else(|| {
                FieldError::Principalization(String::from("generator is not integral"))
            })?;
            debug_assert!(IntegralIdeal::from_generators(k, core::slice::from_ref(&coords))
                .map(|i| i == *ideal)
                .unwrap_or(false));
            return Ok(Some(coords));
        }
        if r.is_reduced(f) {
            match cycle_start {
                None => cycle_start = Some(f),
                Some(s) if s == f => return Ok(None),
                Some(_) => {}
            }
        }
        acc = acc.mul(&lambda(f), &dq);
        f = r.rho(f);
        steps += 1;
        if steps > MAX_STEPS {
            return Err(FieldError::Principalization(String::from("reduction did not terminate")));
        }
    }
}

fn to_coords(e: &QElt, one_mod_four: bool) -> Option<AlgebraicInteger> {
    // sqrt D = 2 omega - 1 (m = 1 mod 4) or 2 omega
    let two = BigRational::from_integer(BigInt::from(2));
    let (c0, c1) = if one_mod_four {
        (&e.x - &e.y, &e.y * &two)
    } else {
        (e.x.clone(), &e.y * &two)
    };
    if c0.is_integer() && c1.is_integer() {
        Some(AlgebraicInteger(vec![c0.to_integer(), c1.to_integer()]))
    } else {
        None
    }
}

/// Primes above `q`, from the roots of the minimal polynomial of `omega`
/// modulo `q`.
pub(super) fn factor_rational_prime(
    k: &NumberField,
    m: u64,
    q: u64,
) -> Result<Vec<(PrimeKey, IntegralIdeal)>, FieldError> {
    let sh = shape(m);
    let qb = BigInt::from(q);
    let t = sh.t.rem_euclid(q as i64) as u64;
    let n = sh.n.mod_floor(&qb).to_u64().unwrap_or(0);
    let f = |r: u64| (arith::mul_mod(r, r, q) + q - arith::mul_mod(t, r, q) + n) % q;
    let roots: Vec<u64> = if q == 2 {
        (0..2).filter(|&r| f(r) == 0).collect()
    } else {
        let dm = (sh.disc % q) as u64;
        let inv2 = (q + 1) / 2;
        match arith::sqrt_mod_prime(dm, q) {
            None => Vec::new(),
            Some(0) => vec![arith::mul_mod(t, inv2, q)],
            Some(s) => {
                let mut v = vec![
                    arith::mul_mod((t + s) % q, inv2, q),
                    arith::mul_mod((t + q - s) % q, inv2, q),
                ];
                v.sort_unstable();
                v
            }
        }
    };
    debug_assert!(roots.iter().all(|&r| f(r) == 0));
    let kr = arith::kronecker(&BigInt::from(sh.disc), q);
    let expected_roots = match kr {
        -1 => 0,
        0 => 1,
        _ => 2,
    };
    if roots.len() != expected_roots {
        return Err(FieldError::Invalid(format!(
            "splitting of {q} disagrees with the Kronecker symbol"
        )));
    }
    let (e, fdeg) = match roots.len() {
        0 => (1, 2),
        1 => (2, 1),
        _ => (1, 1),
    };
    let mut ideals = Vec::new();
    if roots.is_empty() {
        let ideal = IntegralIdeal::from_generators(k, &[k.from_int(&qb)])?;
        ideals.push(ideal);
    } else {
        for &r in roots.iter() {
            let gen = AlgebraicInteger(vec![-BigInt::from(r), BigInt::one()]);
            ideals.push(IntegralIdeal::from_generators(k, &[k.from_int(&qb), gen])?);
        }
    }
    let mut verified = Vec::with_capacity(ideals.len());
    for i in ideals {
        verified.push(i.verify_prime(k, q, e, fdeg).map_err(FieldError::NotPrime)?);
    }
    Ok(key_primes_above(q, verified))
}

/// The canonical quadratic field with the same discriminant.
pub(super) fn canonical_for(field: &NumberField) -> Option<NumberField> {
    let d = field.disc().to_u64()?;
    let m = if d % 4 == 1 { d } else if d % 4 == 0 { d / 4 } else { return None };
    if m < 2 || !arith::is_squarefree(m) || (d % 4 == 0 && m % 4 == 1) {
        return None;
    }
    make_quadratic_field(m as i64).ok()
}
