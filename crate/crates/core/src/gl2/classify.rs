use alloc::vec::Vec;

use super::{nonresidue, Mat2, MatrixGroup};

/// `x + y sqrt n` in `F_{p^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2 {
    pub x: u32,
    pub y: u32,
}

#[derive(Clone, Copy)]
struct Ctx {
    p: u64,
    n: u64,
}

impl Ctx {
    fn new(p: u32) -> Self {
        Ctx { p: p as u64, n: nonresidue(p) as u64 }
    }

    fn add(&self, a: Fp2, b: Fp2) -> Fp2 {
        Fp2 { x: ((a.x as u64 + b.x as u64) % self.p) as u32, y: ((a.y as u64 + b.y as u64) % self.p) as u32 }
    }

    fn sub(&self, a: Fp2, b: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { x: ((a.x as u64 + p - b.x as u64) % p) as u32, y: ((a.y as u64 + p - b.y as u64) % p) as u32 }
    }

    fn mul(&self, a: Fp2, b: Fp2) -> Fp2 {
        let p = self.p;
        let (ax, ay, bx, by) = (a.x as u64, a.y as u64, b.x as u64, b.y as u64);
        Fp2 {
            x: ((ax * bx + (ay * by % p) * self.n) % p) as u32,
            y: ((ax * by + ay * bx) % p) as u32,
        }
    }

    fn scalar(&self, c: u32) -> Fp2 {
        Fp2 { x: c % self.p as u32, y: 0 }
    }

    /// Image of `v` under `m`.
    fn apply(&self, m: &Mat2, v: &Line) -> Line {
        Line {
            x: self.add(self.mul(self.scalar(m.a), v.x), self.mul(self.scalar(m.b), v.y)),
            y: self.add(self.mul(self.scalar(m.c), v.x), self.mul(self.scalar(m.d), v.y)),
        }
    }

    fn parallel(&self, v: &Line, w: &Line) -> bool {
        self.sub(self.mul(v.x, w.y), self.mul(v.y, w.x)) == Fp2 { x: 0, y: 0 }
    }

    fn conj(&self, v: &Line) -> Line {
        let c = |a: Fp2| Fp2 { x: a.x, y: ((self.p - a.y as u64) % self.p) as u32 };
        Line { x: c(v.x), y: c(v.y) }
    }
}

/// Projective point `(x : y)` over `F_{p^2}`, normalized to `(1 : t)` or
/// `(0 : 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub x: Fp2,
    pub y: Fp2,
}

impl Line {
    pub fn is_rational(&self) -> bool {
        self.x.y == 0 && self.y.y == 0
    }
}

/// Lines of `P^1(F_{p^2})`: `(1 : t)` for rational `t`, then `(0 : 1)`, then
/// the rest.
fn projective_line(p: u32, rational_only: bool) -> Vec<Line> {
    let one = Fp2 { x: 1, y: 0 };
    let zero = Fp2 { x: 0, y: 0 };
    let mut out = Vec::new();
    for t in 0..p {
        out.push(Line { x: one, y: Fp2 { x: t, y: 0 } });
    }
    out.push(Line { x: zero, y: one });
    if !rational_only {
        for ty in 1..p {
            for tx in 0..p {
                out.push(Line { x: one, y: Fp2 { x: tx, y: ty } });
            }
        }
    }
    out
}

fn is_eigenline(ctx: &Ctx, m: &Mat2, v: &Line) -> bool {
    ctx.parallel(v, &ctx.apply(m, v))
}

/// Every common eigenline of the generators over `F_{p^2}`.
pub fn common_eigenlines(g: &MatrixGroup) -> Vec<Line> {
    let ctx = Ctx::new(g.p());
    let gens = gens_or_elements(g);
    projective_line(g.p(), false)
        .into_iter()
        .filter(|v| gens.iter().all(|m| is_eigenline(&ctx, m, v)))
        .collect()
}

fn gens_or_elements(g: &MatrixGroup) -> &[Mat2] {
    if g.generators().is_empty() {
        g.elements()
    } else {
        g.generators()
    }
}

/// `Ok(())` when no common eigenvector exists over `F_{p^2}`, else the
/// first one found.
pub fn is_absolutely_irreducible(g: &MatrixGroup) -> Result<(), Line> {
    let ctx = Ctx::new(g.p());
    let gens = gens_or_elements(g);
    match projective_line(g.p(), false)
        .into_iter()
        .find(|v| gens.iter().all(|m| is_eigenline(&ctx, m, v)))
    {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ImageTag {
    ContainsSl2,
    Reducible,
    ContainedInSplitCartan,
    ContainedInNonsplitCartan,
    NormalizerSplitNotCartan,
    NormalizerNonsplitNotCartan,
    ProjectiveA4,
    ProjectiveS4,
    ProjectiveA5,
    /// Outside every case above; not expected for odd `p`.
    Unclassified,
}

impl ImageTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ImageTag::ContainsSl2 => "contains_sl2",
            ImageTag::Reducible => "reducible",
            ImageTag::ContainedInSplitCartan => "contained_in_split_cartan",
            ImageTag::ContainedInNonsplitCartan => "contained_in_nonsplit_cartan",
            ImageTag::NormalizerSplitNotCartan => "normalizer_split_not_cartan",
            ImageTag::NormalizerNonsplitNotCartan => "normalizer_nonsplit_not_cartan",
            ImageTag::ProjectiveA4 => "projective_A4",
            ImageTag::ProjectiveS4 => "projective_S4",
            ImageTag::ProjectiveA5 => "projective_A5",
            ImageTag::Unclassified => "unclassified",
        }
    }

    pub fn is_cartan_normalizer(&self) -> bool {
        matches!(self, ImageTag::NormalizerSplitNotCartan | ImageTag::NormalizerNonsplitNotCartan)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `|G cap SL2|`.
    Sl2Order(usize),
    /// Common eigenlines, or the preserved pair of lines.
    Lines(Vec<Line>),
    /// `|PG|`.
    ProjectiveOrder(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageClassification {
    pub tag: ImageTag,
    pub witness: Witness,
}

fn preserves_pair(ctx: &Ctx, gens: &[Mat2], v: &Line, w: &Line) -> bool {
    gens.iter().all(|m| {
        let mv = ctx.apply(m, v);
        let mw = ctx.apply(m, w);
        (ctx.parallel(&mv, v) && ctx.parallel(&mw, w)) || (ctx.parallel(&mv, w) && ctx.parallel(&mw, v))
    })
}

pub fn classify(g: &MatrixGroup) -> ImageClassification {
    let p = g.p();
    let pu = p as usize;
    let sl2 = g.sl2_part_order();
    if sl2 == pu * (pu * pu - 1) {
        return ImageClassification { tag: ImageTag::ContainsSl2, witness: Witness::Sl2Order(sl2) };
    }
    let ctx = Ctx::new(p);
    let gens = gens_or_elements(g);
    let lines = common_eigenlines(g);
    let rational: Vec<Line> = lines.iter().copied().filter(|l| l.is_rational()).collect();
    if rational.len() >= 2 {
        return ImageClassification {
            tag: ImageTag::ContainedInSplitCartan,
            witness: Witness::Lines(rational[..2].to_vec()),
        };
    }
    if rational.len() == 1 {
        return ImageClassification { tag: ImageTag::Reducible, witness: Witness::Lines(rational) };
    }
    if let Some(v) = lines.first() {
        return ImageClassification {
            tag: ImageTag::ContainedInNonsplitCartan,
            witness: Witness::Lines(alloc::vec![*v, ctx.conj(v)]),
        };
    }

    // Absolutely irreducible: look for a preserved pair of lines, first the
    // standard ones, then every conjugate.
    let one = Fp2 { x: 1, y: 0 };
    let zero = Fp2 { x: 0, y: 0 };
    let e1 = Line { x: one, y: zero };
    let e2 = Line { x: zero, y: one };
    if preserves_pair(&ctx, gens, &e1, &e2) {
        return ImageClassification {
            tag: ImageTag::NormalizerSplitNotCartan,
            witness: Witness::Lines(alloc::vec![e1, e2]),
        };
    }
    // eigenline (1 : 1/sqrt n) = (sqrt n : 1) of the standard nonsplit Cartan
    let n = nonresidue(p) as u64;
    let inv_n = crate::arith::inv_mod(n, p as u64).unwrap_or(0) as u32;
    let s = Line { x: one, y: Fp2 { x: 0, y: inv_n } };
    if preserves_pair(&ctx, gens, &s, &ctx.conj(&s)) {
        return ImageClassification {
            tag: ImageTag::NormalizerNonsplitNotCartan,
            witness: Witness::Lines(alloc::vec![s, ctx.conj(&s)]),
        };
    }
    let rat = projective_line(p, true);
    for (i, v) in rat.iter().enumerate() {
        for w in rat[i + 1..].iter() {
            if preserves_pair(&ctx, gens, v, w) {
                return ImageClassification {
                    tag: ImageTag::NormalizerSplitNotCartan,
                    witness: Witness::Lines(alloc::vec![*v, *w]),
                };
            }
        }
    }
    for v in projective_line(p, false).iter().filter(|l| !l.is_rational()) {
        let w = ctx.conj(v);
        if preserves_pair(&ctx, gens, v, &w) {
            return ImageClassification {
                tag: ImageTag::NormalizerNonsplitNotCartan,
                witness: Witness::Lines(alloc::vec![*v, w]),
            };
        }
    }
    let pg = g.projective_order();
    let tag = match pg {
        12 => ImageTag::ProjectiveA4,
        24 => ImageTag::ProjectiveS4,
        60 => ImageTag::ProjectiveA5,
        _ => ImageTag::Unclassified,
    };
    ImageClassification { tag, witness: Witness::ProjectiveOrder(pg) }
}
