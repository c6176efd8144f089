use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serre_core::irreducibility::{
    bound_b, irreducibility_threshold, left_translation, merel_momose_bound, pattern_constant, twisted_norm,
    IrreducibilityError, SignPattern,
};
use serre_core::numfield::{make_quadratic_field, AlgebraicInteger, FieldDescription, NumberField};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn squarefree(m: i64) -> bool {
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

/// Fundamental unit `(u + v sqrt m) / 2` by search on `v`.
fn unit_half(m: i64) -> (BigInt, BigInt) {
    for v in 1i64.. {
        for sign in [-4i64, 4] {
            let u2 = m * v * v + sign;
            if u2 <= 0 {
                continue;
            }
            let u = (u2 as f64).sqrt().round() as i64;
            if u * u != u2 {
                continue;
            }
            let integral = if m % 4 == 1 { (u - v) % 2 == 0 } else { u % 2 == 0 && v % 2 == 0 };
            if integral {
                return (b(u), b(v));
            }
        }
    }
    unreachable!()
}

/// `(u1 + v1 r)/2 * (u2 + v2 r)/2` with `r^2 = m`, kept as halves.
fn half_mul(m: i64, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let u = &x.0 * &y.0 + b(m) * &x.1 * &y.1;
    let v = &x.0 * &y.1 + &x.1 * &y.0;
    (u / 2, v / 2)
}

/// `B` for a real quadratic field: the unit ideal `(eps^12 - 1)` is
/// principal, so `A_s = |N(eps^12 - 1)|` and `|N(eps'^12 - 1)|`.
fn quadratic_b_oracle(m: i64) -> BigUint {
    let eps = unit_half(m);
    let conj = (eps.0.clone(), -eps.1.clone());
    let mut out: Vec<BigInt> = Vec::new();
    for e in [eps, conj] {
        let mut acc = (b(2), b(0));
        for _ in 0..12 {
            acc = half_mul(m, &acc, &e);
        }
        let (u, v) = (&acc.0 - b(2), acc.1);
        let norm4: BigInt = &u * &u - b(m) * &v * &v;
        assert!(norm4.is_multiple_of(&b(4)));
        out.push((norm4 / b(4)).abs());
    }
    out[0].lcm(&out[1]).to_biguint().unwrap()
}

#[test]
fn golden_constants() {
    let k = make_quadratic_field(5).unwrap();
    let eps = &k.units()[0];
    let s = SignPattern::new(vec![12, 0]).unwrap();
    // Fibonacci: eps^12 = F12 eps + F11
    assert_eq!(twisted_norm(&k, &s, eps), AlgebraicInteger::from_i64s(&[89, 144]));
    assert_eq!(pattern_constant(&k, &s).unwrap(), 320u32.into());
    assert_eq!(pattern_constant(&k, &s.complement()).unwrap(), 320u32.into());
    // 160^2 - 5 * 72^2
    assert_eq!(160i64 * 160 - 5 * 72 * 72, -320);
    let (bb, table) = bound_b(&k).unwrap();
    assert_eq!(bb, 320u32.into());
    let shown: Vec<String> = table.iter().map(|p| p.pattern.to_string()).collect();
    assert_eq!(shown, ["(0,12)", "(12,0)"]);
    assert_eq!(bb, quadratic_b_oracle(5));
}

#[test]
fn sqrt2_constant() {
    let k = make_quadratic_field(2).unwrap();
    // (1 + sqrt 2)^12 = 19601 + 13860 sqrt 2; N(19600 + 13860 sqrt 2) = -39200
    assert_eq!(19600i64 * 19600 - 2 * 13860 * 13860, -39200);
    assert_eq!(bound_b(&k).unwrap().0, 39200u32.into());
}

#[test]
fn bound_b_matches_oracle_up_to_30() {
    for m in 2..=30 {
        if !squarefree(m) {
            continue;
        }
        let k = make_quadratic_field(m).unwrap();
        let (bb, table) = bound_b(&k).unwrap();
        assert_eq!(bb, quadratic_b_oracle(m), "m = {m}");
        for p in table.iter() {
            assert!(bb.is_multiple_of(&p.a_s));
        }
    }
}

#[test]
fn pattern_errors() {
    let k = make_quadratic_field(5).unwrap();
    let zero = SignPattern::new(vec![0, 0]).unwrap();
    assert_eq!(pattern_constant(&k, &zero), Err(IrreducibilityError::TrivialPattern(zero.clone())));
    let full = SignPattern::new(vec![12, 12]).unwrap();
    assert!(pattern_constant(&k, &full).is_err());
    assert!(pattern_constant(&k, &SignPattern::new(vec![12]).unwrap()).is_err());
    assert!(SignPattern::new(vec![0, 6]).is_none());
    assert!(SignPattern::nontrivial(1).is_empty());
    assert_eq!(SignPattern::nontrivial(3).len(), 6);
    assert_eq!(twisted_norm(&k, &zero, &k.units()[0]), k.one());
    // all-12 gives Norm^12
    let e = AlgebraicInteger::from_i64s(&[3, 7]);
    let n = k.element_norm(&e);
    assert_eq!(twisted_norm(&k, &full, &e), k.from_int(&n.pow(12)));
}

#[test]
fn merel_momose_values() {
    assert_eq!(merel_momose_bound(2, 1), 531442u32.into());
    assert_eq!(merel_momose_bound(1, 1), 730u32.into());
    for d in 1..4 {
        for h in 1..4 {
            assert!(merel_momose_bound(d + 1, h) > merel_momose_bound(d, h));
            assert!(merel_momose_bound(d, h + 1) > merel_momose_bound(d, h));
        }
    }
}

#[test]
fn thresholds() {
    let k = make_quadratic_field(5).unwrap();
    let t = irreducibility_threshold(&k, &[]).unwrap();
    assert_eq!(t.threshold, 531442u32.into());
    assert_eq!(t.merel_momose, 531442u32.into());
    let ex: Vec<u32> = t.excluded_primes.iter().map(|p| u32::try_from(p).unwrap()).collect();
    assert_eq!(ex, [2, 3, 5, 7, 13]);
    let s = k.factor_rational_prime(2).unwrap();
    let t2 = irreducibility_threshold(&k, &s).unwrap();
    assert_eq!(t2.threshold, 531442u32.into());
    for m in [2, 3, 6, 7, 10, 11] {
        let k = make_quadratic_field(m).unwrap();
        let t = irreducibility_threshold(&k, &[]).unwrap();
        assert!(t.threshold >= t.merel_momose);
        assert!(t.excluded_primes.iter().all(|p| *p <= t.threshold));
        assert!(t.threshold >= 13u32.into());
    }
    // Q(sqrt 10) has h = 2: 3^24 + 1
    let k = make_quadratic_field(10).unwrap();
    assert_eq!(irreducibility_threshold(&k, &[]).unwrap().merel_momose, merel_momose_bound(2, 2));
}

// Real cubic field of conductor 7, theta = 2 cos(2 pi / 7).
const CUBIC_POLY: [i64; 4] = [-1, -2, 1, 1];

fn cubic() -> NumberField {
    let ints = |v: &[i64]| v.iter().map(|&x| b(x)).collect::<Vec<_>>();
    let mt = vec![
        vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])],
        vec![ints(&[0, 1, 0]), ints(&[0, 0, 1]), ints(&[1, 2, -1])],
        vec![ints(&[0, 0, 1]), ints(&[1, 2, -1]), ints(&[-1, -1, 3])],
    ];
    let autos = vec![
        vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])],
        vec![ints(&[1, -2, 3]), ints(&[0, 0, -1]), ints(&[0, 1, -1])],
        vec![ints(&[1, 1, 2]), ints(&[0, -1, 1]), ints(&[0, -1, 0])],
    ];
    let id = |i: usize, j: usize| BigRational::from_integer(b((i == j) as i64));
    let desc = FieldDescription {
        label: Some("3.3.49.1".into()),
        degree: 3,
        poly: ints(&CUBIC_POLY),
        integral_basis: (0..3).map(|i| (0..3).map(|j| id(i, j)).collect()).collect(),
        mult_table: mt,
        disc: b(49),
        automorphisms: autos,
        units: vec![ints(&[0, 1, 0]), ints(&[1, 1, 0])],
        class_number: 1,
        primes: Vec::new(),
    };
    NumberField::from_description(&desc).unwrap()
}

/// Product modulo the cubic polynomial, by schoolbook multiplication.
fn poly_mul_mod(a: &[BigInt], c: &[BigInt]) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); 5];
    for i in 0..3 {
        for j in 0..3 {
            prod[i + j] += &a[i] * &c[j];
        }
    }
    for deg in (3..5).rev() {
        let top = prod[deg].clone();
        for (i, &c) in CUBIC_POLY[..3].iter().enumerate() {
            prod[deg - 3 + i] -= &top * c;
        }
        prod[deg] = BigInt::zero();
    }
    prod.truncate(3);
    prod
}

fn poly_pow(a: &[BigInt], e: u32) -> Vec<BigInt> {
    let mut acc = vec![b(1), b(0), b(0)];
    for _ in 0..e {
        acc = poly_mul_mod(&acc, a);
    }
    acc
}

/// `a(g)` where `g` is the image of theta.
fn substitute(a: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let g2 = poly_mul_mod(g, g);
    (0..3).map(|i| &a[0] * b((i == 0) as i64) + &a[1] * &g[i] + &a[2] * &g2[i]).collect()
}

fn det3(m: &[&Vec<BigInt>]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Norm of the ideal generated by `gens`: the gcd of all maximal minors
/// of the lattice spanned by `g * theta^j`.
fn ideal_norm_by_minors(gens: &[Vec<BigInt>]) -> BigInt {
    let theta = vec![b(0), b(1), b(0)];
    let mut rows = Vec::new();
    for g in gens {
        let mut r = g.clone();
        for _ in 0..3 {
            rows.push(r.clone());
            r = poly_mul_mod(&r, &theta);
        }
    }
    let mut g = BigInt::zero();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for l in j + 1..rows.len() {
                g = g.gcd(&det3(&[&rows[i], &rows[j], &rows[l]]));
            }
        }
    }
    g
}

#[test]
fn cubic_field_constants() {
    let k = cubic();
    let images = [vec![b(0), b(1), b(0)], vec![b(-2), b(0), b(1)], vec![b(1), b(-1), b(-1)]];
    let units = [vec![b(0), b(1), b(0)], vec![b(1), b(1), b(0)]];
    let (bb, table) = bound_b(&k).unwrap();
    assert_eq!(table.len(), 6);
    let mut lcm = BigInt::one();
    for p in table.iter() {
        let gens: Vec<Vec<BigInt>> = units
            .iter()
            .map(|u| {
                let mut acc = vec![b(1), b(0), b(0)];
                for (tau, &e) in p.pattern.values().iter().enumerate() {
                    acc = poly_mul_mod(&acc, &poly_pow(&substitute(u, &images[tau]), e as u32));
                }
                acc[0] -= 1;
                acc
            })
            .collect();
        let want = ideal_norm_by_minors(&gens);
        assert_eq!(BigInt::from(p.a_s.clone()), want, "pattern {}", p.pattern);
        lcm = lcm.lcm(&want);
    }
    assert_eq!(BigInt::from(bb.clone()), lcm);
    let t = irreducibility_threshold(&k, &[]).unwrap();
    assert_eq!(t.merel_momose, merel_momose_bound(3, 1));
    assert!(t.threshold >= t.merel_momose);
}

#[test]
fn galois_equivariance_and_complements() {
    let k = cubic();
    let (_, table) = bound_b(&k).unwrap();
    let lookup = |s: &SignPattern| table.iter().find(|p| p.pattern == *s).unwrap().a_s.clone();
    for tau in 0..3 {
        let perm = left_translation(&k, tau).unwrap();
        for p in table.iter() {
            assert_eq!(lookup(&p.pattern.compose(&perm)), p.a_s, "tau = {tau}, s = {}", p.pattern);
        }
    }
    // N_s(e) N_{12-s}(e) = N(e)^12
    for u in k.units() {
        let n12 = k.element_norm(u).pow(12);
        for p in table.iter() {
            let prod = k.mul(&twisted_norm(&k, &p.pattern, u), &twisted_norm(&k, &p.pattern.complement(), u));
            assert_eq!(prod, k.from_int(&n12));
        }
    }
    let k = make_quadratic_field(7).unwrap();
    let (_, table) = bound_b(&k).unwrap();
    assert_eq!(table[0].a_s, table[1].a_s);
}
