//! Subgroups of `GL2(F_p)` for small odd `p`, materialized exhaustively.
//!
//! Matrices are encoded as `a p^3 + b p^2 + c p + d` for `[[a, b], [c, d]]`;
//! a group keeps a membership bitset over all `p^4` codes.

mod classify;
mod verify;

pub use classify::{
    classify, common_eigenlines, is_absolutely_irreducible, ImageClassification, ImageTag, Line, Witness,
};
pub use verify::{
    inertia_shape_subgroup, run_dichotomy_trials, verify_ordinary_plus_part_claim,
    verify_supersingular_plus_part_claim, Counterexample, DichotomyReport, InertiaKind, PlusPartReport,
};

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;

/// Largest `p` for which full groups are materialized.
pub const DEFAULT_ENUMERATION_LIMIT: u32 = 31;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Gl2Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p = {0}: p >= 3 required for Cartan constructions")]
    EvenPrime(u32),
    #[error("p = {p} exceeds the enumeration limit {limit}")]
    TooLarge { p: u32, limit: u32 },
    #[error("matrix {0} is singular mod p")]
    Singular(Mat2),
}

pub fn check_prime(p: u32) -> Result<(), Gl2Error> {
    if !arith::is_prime_u64(p as u64) {
        return Err(Gl2Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Gl2Error::EvenPrime(p));
    }
    if p > DEFAULT_ENUMERATION_LIMIT {
        return Err(Gl2Error::TooLarge { p, limit: DEFAULT_ENUMERATION_LIMIT });
    }
    Ok(())
}

/// `[[a, b], [c, d]]` with entries reduced mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mat2 {
    pub fn new(p: u32, a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        Mat2 { a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    pub fn identity() -> Mat2 {
        Mat2 { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn diag(x: u32, y: u32) -> Mat2 {
        Mat2 { a: x, b: 0, c: 0, d: y }
    }

    pub fn mul(&self, o: &Mat2, p: u32) -> Mat2 {
        let p = p as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| ((x as u64 * y as u64 + z as u64 * w as u64) % p) as u32;
        Mat2 {
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn det(&self, p: u32) -> u32 {
        let p = p as u64;
        ((self.a as u64 * self.d as u64 + p * p - (self.b as u64 * self.c as u64) % p) % p) as u32
    }

    pub fn trace(&self, p: u32) -> u32 {
        (self.a + self.d) % p
    }

    pub fn inverse(&self, p: u32) -> Option<Mat2> {
        let inv = arith::inv_mod(self.det(p) as u64, p as u64)? as u64;
        let n = |x: u32| ((p - x % p) % p) as u64;
        let m = |x: u64| ((x * inv) % p as u64) as u32;
        Some(Mat2 { a: m(self.d as u64), b: m(n(self.b)), c: m(n(self.c)), d: m(self.a as u64) })
    }

    pub fn pow(&self, mut e: u64, p: u32) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            base = base.mul(&base, p);
            e >>= 1;
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// Order `p` elements are exactly the unipotents other than `I`.
    pub fn is_nontrivial_unipotent(&self, p: u32) -> bool {
        self.trace(p) == 2 % p && self.det(p) == 1 && *self != Mat2::identity()
    }

    pub fn encode(&self, p: u32) -> u32 {
        ((self.a * p + self.b) * p + self.c) * p + self.d
    }

    pub fn decode(code: u32, p: u32) -> Mat2 {
        Mat2 { a: code / (p * p * p), b: code / (p * p) % p, c: code / p % p, d: code % p }
    }

    /// Order in `GL2`; the matrix must be invertible.
    pub fn order(&self, p: u32) -> u64 {
        let mut k = 1u64;
        let mut m = *self;
        while m != Mat2::identity() {
            m = m.mul(self, p);
            k += 1;
        }
        k
    }

    /// Smallest `k >= 1` with `M^k` scalar.
    pub fn projective_order(&self, p: u32) -> u64 {
        let mut k = 1u64;
        let mut m = *self;
        while !m.is_scalar() {
            m = m.mul(self, p);
            k += 1;
        }
        k
    }
}

/// Finite subgroup of `GL2(F_p)` with its full element list.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    p: u32,
    generators: Vec<Mat2>,
    elements: Vec<Mat2>,
    member: Vec<u64>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.member == o.member
    }
}

impl Eq for MatrixGroup {}

fn bitset(p: u32) -> Vec<u64> {
    vec![0u64; ((p as usize).pow(4) + 63) / 64]
}

impl MatrixGroup {
    /// Closure of `gens` under multiplication.
    pub fn generate(p: u32, gens: &[Mat2]) -> Result<MatrixGroup, Gl2Error> {
        Self::generate_until(p, gens, |_| false).map(|g| g.expect("no early stop requested"))
    }

    /// As [`MatrixGroup::generate`], returning `Ok(None)` as soon as an
    /// element satisfies `stop`.
    pub fn generate_until(
        p: u32,
        gens: &[Mat2],
        stop: impl Fn(&Mat2) -> bool,
    ) -> Result<Option<MatrixGroup>, Gl2Error> {
        check_prime(p)?;
        for g in gens {
            if g.det(p) == 0 {
                return Err(Gl2Error::Singular(*g));
            }
        }
        let mut member = bitset(p);
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        let id = Mat2::identity();
        insert(&mut member, id.encode(p));
        elements.push(id);
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g, p);
                let code = y.encode(p);
                if !contains_code(&member, code) {
                    if stop(&y) {
                        return Ok(None);
                    }
                    insert(&mut member, code);
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(Some(MatrixGroup { p, generators: gens.to_vec(), elements, member }))
    }

    /// Group with a given element list; the caller guarantees closure.
    fn from_elements(p: u32, generators: Vec<Mat2>, mut elements: Vec<Mat2>) -> MatrixGroup {
        let mut member = bitset(p);
        for e in elements.iter() {
            insert(&mut member, e.encode(p));
        }
        elements.sort_unstable();
        elements.dedup();
        MatrixGroup { p, generators, elements, member }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        contains_code(&self.member, m.encode(self.p))
    }

    pub fn is_subgroup_of(&self, o: &MatrixGroup) -> bool {
        self.p == o.p && self.elements.iter().all(|e| o.contains(e))
    }

    /// Exhaustive check of closure under products and inverses.
    pub fn validate(&self) -> bool {
        let p = self.p;
        self.elements.iter().all(|x| x.inverse(p).is_some_and(|i| self.contains(&i)))
            && self.elements.iter().all(|x| self.elements.iter().all(|y| self.contains(&x.mul(y, p))))
    }

    /// Number of scalar elements.
    pub fn scalar_count(&self) -> usize {
        self.elements.iter().filter(|m| m.is_scalar()).count()
    }

    /// Order of the image in `PGL2(F_p)`.
    pub fn projective_order(&self) -> usize {
        self.order() / self.scalar_count()
    }

    pub fn sl2_part_order(&self) -> usize {
        self.elements.iter().filter(|m| m.det(self.p) == 1).count()
    }

    pub fn has_element_of_projective_order(&self, n: u64) -> bool {
        self.elements.iter().any(|m| m.projective_order(self.p) == n)
    }

    pub fn has_element_of_order_p(&self) -> bool {
        self.elements.iter().any(|m| m.is_nontrivial_unipotent(self.p))
    }

    /// `G+`: elements with square determinant.
    pub fn plus_part(&self) -> MatrixGroup {
        let p = self.p;
        let squares = square_table(p);
        let elems: Vec<Mat2> = self.elements.iter().copied().filter(|m| squares[m.det(p) as usize]).collect();
        MatrixGroup::from_elements(p, Vec::new(), elems)
    }

    /// Conjugate `g G g^-1`.
    pub fn conjugate(&self, g: &Mat2) -> MatrixGroup {
        let p = self.p;
        let gi = g.inverse(p).expect("conjugator must be invertible");
        let c = |m: &Mat2| g.mul(m, p).mul(&gi, p);
        MatrixGroup::from_elements(
            p,
            self.generators.iter().map(c).collect(),
            self.elements.iter().map(c).collect(),
        )
    }
}

fn insert(bits: &mut [u64], code: u32) {
    bits[(code / 64) as usize] |= 1u64 << (code % 64);
}

fn contains_code(bits: &[u64], code: u32) -> bool {
    bits[(code / 64) as usize] >> (code % 64) & 1 == 1
}

/// `squares[x]` for nonzero squares mod `p`.
pub fn square_table(p: u32) -> Vec<bool> {
    let mut t = vec![false; p as usize];
    for x in 1..p as u64 {
        t[((x * x) % p as u64) as usize] = true;
    }
    t
}

/// Every invertible matrix mod `p`.
pub fn all_invertible(p: u32) -> Vec<Mat2> {
    let mut out = Vec::with_capacity(((p * p - 1) * (p * p - p)) as usize);
    for code in 0..p.pow(4) {
        let m = Mat2::decode(code, p);
        if m.det(p) != 0 {
            out.push(m);
        }
    }
    out
}

pub fn gl2(p: u32) -> Result<MatrixGroup, Gl2Error> {
    check_prime(p)?;
    let g = arith::primitive_root(p as u64) as u32;
    // diag(g, 1) and the standard generators of SL2.
    let gens = vec![Mat2::diag(g, 1), Mat2 { a: 1, b: 1, c: 0, d: 1 }, Mat2 { a: 0, b: p - 1, c: 1, d: 0 }];
    Ok(MatrixGroup::from_elements(p, gens, all_invertible(p)))
}

pub fn sl2(p: u32) -> Result<MatrixGroup, Gl2Error> {
    check_prime(p)?;
    let elems: Vec<Mat2> = all_invertible(p).into_iter().filter(|m| m.det(p) == 1).collect();
    let gens = vec![Mat2 { a: 1, b: 1, c: 0, d: 1 }, Mat2 { a: 0, b: p - 1, c: 1, d: 0 }];
    Ok(MatrixGroup::from_elements(p, gens, elems))
}

/// Diagonal matrices, generated by `diag(g, 1)` and `diag(1, g)`.
pub fn split_cartan(p: u32) -> Result<MatrixGroup, Gl2Error> {
    check_prime(p)?;
    let g = arith::primitive_root(p as u64) as u32;
    MatrixGroup::generate(p, &[Mat2::diag(g, 1), Mat2::diag(1, g)])
}

/// Least quadratic non-residue, used to embed `F_{p^2} = F_p(sqrt n)`.
pub fn nonresidue(p: u32) -> u32 {
    arith::least_nonresidue(p as u64) as u32
}

/// `x + y sqrt n` as `[[x, n y], [y, x]]`.
pub fn embed_fp2(p: u32, x: u32, y: u32) -> Mat2 {
    let n = nonresidue(p);
    Mat2 { a: x % p, b: ((n as u64 * y as u64) % p as u64) as u32, c: y % p, d: x % p }
}

/// Image of `F_{p^2}^*`, generated by one element of order `p^2 - 1`.
pub fn nonsplit_cartan(p: u32) -> Result<MatrixGroup, Gl2Error> {
    check_prime(p)?;
    let gen = nonsplit_generator(p);
    MatrixGroup::generate(p, &[gen])
}

/// First `x + y sqrt n` (in `(y, x)` order) of multiplicative order `p^2 - 1`.
pub fn nonsplit_generator(p: u32) -> Mat2 {
    let target = (p as u64) * (p as u64) - 1;
    for y in 1..p {
        for x in 0..p {
            let m = embed_fp2(p, x, y);
            if m.order(p) == target {
                return m;
            }
        }
    }
    unreachable!("F_{{p^2}}^* is cyclic")
}

/// Normalizer of `c` in `GL2(F_p)`, by exhaustive search.
pub fn cartan_normalizer(c: &MatrixGroup) -> MatrixGroup {
    let p = c.p;
    let gens: Vec<Mat2> = if c.generators.is_empty() { c.elements.clone() } else { c.generators.clone() };
    let elems: Vec<Mat2> = all_invertible(p)
        .into_iter()
        .filter(|g| {
            let gi = g.inverse(p).expect("invertible");
            gens.iter().all(|h| c.contains(&g.mul(h, p).mul(&gi, p)))
        })
        .collect();
    let mut ngens = c.generators.clone();
    if let Some(w) = elems.iter().find(|e| !c.contains(e)) {
        ngens.push(*w);
    }
    MatrixGroup::from_elements(p, ngens, elems)
}
