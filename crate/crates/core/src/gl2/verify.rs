//! Brute-force checks of the group-theoretic steps behind the image
//! classification.

use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    all_invertible, check_prime, classify, embed_fp2, is_absolutely_irreducible, nonsplit_generator,
    square_table, Gl2Error, ImageTag, Mat2, MatrixGroup,
};
use crate::arith;

/// Largest `p` for which the plus-part claims run over all of `GL2(F_p)`.
pub const EXHAUSTIVE_PLUS_PART_LIMIT: u32 = 13;
/// Sample size above that limit.
pub const PLUS_PART_SAMPLES: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusPartReport {
    pub p: u32,
    pub exhaustive: bool,
    pub checked: u64,
    pub counterexamples: Vec<Mat2>,
}

impl PlusPartReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn candidates(p: u32, seed: u64) -> (bool, Vec<Mat2>) {
    if p <= EXHAUSTIVE_PLUS_PART_LIMIT {
        return (true, all_invertible(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..PLUS_PART_SAMPLES).map(|_| random_gl2(&mut rng, p)).collect();
    (false, out)
}

/// For every `B` having neither `e1` nor `e2` as an eigenvector,
/// `<diag(g^2, 1), B diag(g^s, 1)>` is absolutely irreducible, where `s` makes
/// the determinant a square.
pub fn verify_ordinary_plus_part_claim(p: u32, seed: u64) -> Result<PlusPartReport, Gl2Error> {
    check_prime(p)?;
    let g = arith::primitive_root(p as u64) as u32;
    let squares = square_table(p);
    let a2 = Mat2::diag(((g as u64 * g as u64) % p as u64) as u32, 1);
    let a1 = Mat2::diag(g, 1);
    let (exhaustive, bs) = candidates(p, seed);
    let mut report = PlusPartReport { p, exhaustive, checked: 0, counterexamples: Vec::new() };
    for b in bs {
        // e1 is an eigenvector iff c = 0, e2 iff b = 0
        if b.c == 0 || b.b == 0 {
            continue;
        }
        let second = if squares[b.det(p) as usize] { b } else { b.mul(&a1, p) };
        report.checked += 1;
        if !generators_irreducible(p, &[a2, second]) {
            report.counterexamples.push(b);
        }
    }
    Ok(report)
}

/// Nonsplit analogue: `gamma` generates `C_ns`, `B` has neither eigenline
/// of `C_ns`, and `<gamma^2, B gamma^s>` must be absolutely irreducible.
pub fn verify_supersingular_plus_part_claim(p: u32, seed: u64) -> Result<PlusPartReport, Gl2Error> {
    check_prime(p)?;
    let squares = square_table(p);
    let gamma = nonsplit_generator(p);
    let gamma2 = gamma.mul(&gamma, p);
    let c_ns = MatrixGroup::generate(p, &[gamma])?;
    let (exhaustive, bs) = candidates(p, seed);
    let mut report = PlusPartReport { p, exhaustive, checked: 0, counterexamples: Vec::new() };
    for b in bs {
        if shares_cartan_eigenline(p, &c_ns, &b) {
            continue;
        }
        let second = if squares[b.det(p) as usize] { b } else { b.mul(&gamma, p) };
        report.checked += 1;
        if !generators_irreducible(p, &[gamma2, second]) {
            report.counterexamples.push(b);
        }
    }
    Ok(report)
}

/// `B` fixes an eigenline of `C_ns`.
fn shares_cartan_eigenline(p: u32, c_ns: &MatrixGroup, b: &Mat2) -> bool {
    let gens = vec![c_ns.generators()[0], *b];
    let g = MatrixGroup { p, generators: gens, elements: Vec::new(), member: Vec::new() };
    !super::common_eigenlines(&g).is_empty()
}

fn generators_irreducible(p: u32, gens: &[Mat2]) -> bool {
    let g = MatrixGroup { p, generators: gens.to_vec(), elements: Vec::new(), member: Vec::new() };
    is_absolutely_irreducible(&g).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InertiaKind {
    Ordinary,
    Supersingular,
}

/// Ordinary: `{diag(t, 1)}`. Supersingular: the image of `F_{p^2}^*`
/// acting through `(w, w^p)`, i.e. the full nonsplit Cartan.
pub fn inertia_shape_subgroup(p: u32, kind: InertiaKind) -> Result<MatrixGroup, Gl2Error> {
    check_prime(p)?;
    match kind {
        InertiaKind::Ordinary => {
            let g = arith::primitive_root(p as u64) as u32;
            MatrixGroup::generate(p, &[Mat2::diag(g, 1)])
        }
        InertiaKind::Supersingular => MatrixGroup::generate(p, &[nonsplit_generator(p)]),
    }
}

fn random_gl2(rng: &mut ChaCha8Rng, p: u32) -> Mat2 {
    loop {
        let m = Mat2 { a: rng.gen_range(0..p), b: rng.gen_range(0..p), c: rng.gen_range(0..p), d: rng.gen_range(0..p) };
        if m.det(p) != 0 {
            return m;
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    rng.gen_range(1..p)
}

/// Random element of `N_s` (diagonal or antidiagonal).
fn random_ns(rng: &mut ChaCha8Rng, p: u32) -> Mat2 {
    let (x, y) = (random_unit(rng, p), random_unit(rng, p));
    if rng.gen_bool(0.5) {
        Mat2::diag(x, y)
    } else {
        Mat2 { a: 0, b: x, c: y, d: 0 }
    }
}

/// Random element of `N_ns = C_ns u C_ns diag(1, -1)`.
fn random_nns(rng: &mut ChaCha8Rng, p: u32) -> Mat2 {
    let c = loop {
        let (x, y) = (rng.gen_range(0..p), rng.gen_range(0..p));
        if x != 0 || y != 0 {
            break embed_fp2(p, x, y);
        }
    };
    if rng.gen_bool(0.5) {
        c
    } else {
        c.mul(&Mat2::diag(1, p - 1), p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    pub generators: Vec<Mat2>,
    pub tag: ImageTag,
    pub projective_order: usize,
}

/// Outcome counts of the dichotomy test: absolutely irreducible, no element
/// of order `p`, and an element of projective order `p - 1` or `p + 1`
/// together force a Cartan normalizer.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DichotomyReport {
    pub p: u32,
    pub trials: u64,
    pub has_order_p: u64,
    pub not_irreducible: u64,
    pub no_long_projective_element: u64,
    pub hypotheses_met: u64,
    pub in_cartan_normalizer: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl DichotomyReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Combine reports over disjoint trial ranges; counterexamples stay in
    /// trial order.
    pub fn merge(mut self, o: DichotomyReport) -> DichotomyReport {
        self.trials += o.trials;
        self.has_order_p += o.has_order_p;
        self.not_irreducible += o.not_irreducible;
        self.no_long_projective_element += o.no_long_projective_element;
        self.hypotheses_met += o.hypotheses_met;
        self.in_cartan_normalizer += o.in_cartan_normalizer;
        self.counterexamples.extend(o.counterexamples);
        self.counterexamples.sort_by_key(|c| c.trial);
        self
    }
}

/// Trials `range`; trial `i` draws from the ChaCha8 stream `i` of `seed`, so
/// any partition of the trial indices gives the same merged report.
pub fn run_dichotomy_trials(p: u32, seed: u64, range: core::ops::Range<u64>) -> Result<DichotomyReport, Gl2Error> {
    check_prime(p)?;
    let mut report = DichotomyReport { p, ..Default::default() };
    for trial in range {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        report.trials += 1;
        let pool = rng.gen_range(0..3u8);
        let conj = random_gl2(&mut rng, p);
        let conj_inv = conj.inverse(p).expect("invertible");
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<Mat2> = (0..k)
            .map(|_| match pool {
                0 => random_gl2(&mut rng, p),
                1 => conj.mul(&random_ns(&mut rng, p), p).mul(&conj_inv, p),
                _ => conj.mul(&random_nns(&mut rng, p), p).mul(&conj_inv, p),
            })
            .collect();
        let Some(group) = MatrixGroup::generate_until(p, &gens, |m| m.is_nontrivial_unipotent(p))? else {
            report.has_order_p += 1;
            continue;
        };
        if is_absolutely_irreducible(&group).is_err() {
            report.not_irreducible += 1;
            continue;
        }
        let long = group
            .elements()
            .iter()
            .any(|m| matches!(m.projective_order(p), n if n == (p - 1) as u64 || n == (p + 1) as u64));
        if !long {
            report.no_long_projective_element += 1;
            continue;
        }
        report.hypotheses_met += 1;
        let c = classify(&group);
        if c.tag.is_cartan_normalizer() {
            report.in_cartan_normalizer += 1;
        } else {
            report.counterexamples.push(Counterexample {
                trial,
                generators: gens,
                tag: c.tag,
                projective_order: group.projective_order(),
            });
        }
    }
    Ok(report)
}
