use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{AlgebraicInteger, NumberField};
use crate::poly::Poly;

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = c.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// A real root of the defining polynomial, held as a refinable isolating
/// interval.
#[derive(Clone, Debug)]
pub struct RealEmbedding {
    poly: Poly,
    root: (BigRational, BigRational),
}

impl RealEmbedding {
    pub fn new(poly: Poly, root: (BigRational, BigRational)) -> Self {
        RealEmbedding { poly, root }
    }

    pub fn root_interval(&self) -> Interval {
        Interval { lo: self.root.0.clone(), hi: self.root.1.clone() }
    }

    pub fn refine(&mut self) {
        self.root = self.poly.refine(&self.root);
    }

    /// Enclosure of the image of `a`.
    pub fn eval(&self, k: &NumberField, a: &AlgebraicInteger) -> Interval {
        let x = self.root_interval();
        let mut acc = Interval::point(BigRational::zero());
        for c in k.to_power_basis(a).iter().rev() {
            acc = acc.mul(&x).add(&Interval::point(c.clone()));
        }
        acc
    }

    /// Sign of the image of a nonzero `a`, refining as needed.
    pub fn sign(&mut self, k: &NumberField, a: &AlgebraicInteger) -> i8 {
        if a.is_zero() {
            return 0;
        }
        loop {
            let iv = self.eval(k, a);
            if iv.lo.is_positive() {
                return 1;
            }
            if iv.hi.is_negative() {
                return -1;
            }
            self.refine();
        }
    }

    /// Floating-point approximation of the image of `a`, refined until the
    /// enclosure is narrower than `tol`.
    pub fn approx(&mut self, k: &NumberField, a: &AlgebraicInteger, tol: f64) -> f64 {
        let tol = BigRational::from_float(tol).unwrap_or_else(|| BigRational::new(1.into(), 1_000_000.into()));
        for _ in 0..400 {
            let iv = self.eval(k, a);
            if iv.width() <= tol {
                return iv.midpoint_f64();
            }
            self.refine();
        }
        self.eval(k, a).midpoint_f64()
    }
}
