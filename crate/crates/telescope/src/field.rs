//! Coefficient fields.
//!
//! Every algorithm in this crate is written over an abstract [`Field`].
//! The concrete instances are `Rat` (arbitrary-precision rationals), the
//! quotient fields Q[z]/(u) from `quot`, and the rational-function fields
//! `RatFun<F>` built on top of any of these. Stacking `RatFun` yields the
//! towers Q(x), Q(n)(k), Q(m)(n)(k), ... used by the telescoping code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::poly::Poly;

/// Arbitrary-precision rational number, the base constant field.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Evaluation points used to specialize a field tower down to Q.
///
/// Each `RatFun` level of a tower consumes one point (levels are counted
/// from the outermost variable inward). Specialization returns `None`
/// when a denominator vanishes at the chosen points; callers retry with
/// a fresh context.
#[derive(Clone, Debug)]
pub struct SpecCtx {
    points: Vec<Rat>,
}

impl SpecCtx {
    pub fn new(seed: u64) -> Self {
        // Deterministic, pairwise-distinct points, unlikely to hit poles.
        let mut points = Vec::new();
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        for _ in 0..8 {
            s ^= s >> 33;
            s = s.wrapping_mul(0xff51afd7ed558ccd);
            let num = 17 + (s % 97) as i64;
            let den = 2 + ((s >> 32) % 11) as i64;
            points.push(ratio(num, den));
        }
        SpecCtx { points }
    }

    pub fn point(&self, level: usize) -> Rat {
        self.points[level % self.points.len()].clone()
    }
}

/// A field of characteristic zero with exact arithmetic.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn from_i64(v: i64) -> Self;
    fn from_rat(v: &Rat) -> Self;

    /// Returns the value as a rational constant if it is one.
    fn as_rat(&self) -> Option<Rat>;

    /// Ring homomorphism onto Q given by evaluating every tower variable
    /// at the points of `ctx`; `level` is the tower depth of `self`.
    fn specialize(&self, ctx: &SpecCtx, level: usize) -> Option<Rat>;

    /// Polynomial gcd over this field, monic. Overridden for `Rat` with a
    /// modular algorithm; the default is the Euclidean remainder sequence.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        crate::poly::euclidean_gcd(a, b)
    }

    /// A positive rational c such that self/c has integral leaf
    /// coefficients; used to normalize solution vectors. Zero for zero.
    fn content_hint(&self) -> Rat {
        if self.is_zero() {
            <Rat as Field>::zero()
        } else {
            <Rat as Field>::one()
        }
    }

    /// Sign of the recursively-leading rational coefficient.
    fn lead_sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            1
        }
    }
}

/// gcd of rationals: gcd(a/b, c/d) = gcd(a*d, c*b)/(b*d), with
/// gcd(0, x) = |x|.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    if Zero::is_zero(a) {
        return b.abs();
    }
    if Zero::is_zero(b) {
        return a.abs();
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom())
}

impl Field for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Self {
        if Zero::is_zero(self) {
            panic!("division by zero in Q");
        }
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn from_rat(v: &Rat) -> Self {
        v.clone()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn specialize(&self, _ctx: &SpecCtx, _level: usize) -> Option<Rat> {
        Some(self.clone())
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        crate::zarith::qpoly_gcd(a, b)
    }
    fn content_hint(&self) -> Rat {
        self.abs()
    }
    fn lead_sign(&self) -> i32 {
        rat_sign(self)
    }
}

/// True if the rational is a (signed) integer.
pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The integer value of a rational, if it is one and fits in i64.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if !rat_is_integer(r) {
        return None;
    }
    let n = r.numer();
    let (sign, digits) = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 if digits[0] <= i64::MAX as u64 => {
            let v = digits[0] as i64;
            Some(if sign == num_bigint::Sign::Minus { -v } else { v })
        }
        _ => None,
    }
}

/// Sign of a rational: -1, 0, or 1.
pub fn rat_sign(r: &Rat) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Rendering for field towers with caller-supplied variable names:
/// names[0] is the outermost variable, names[1] the next level inward.
pub trait TowerDisplay {
    fn tower_string(&self, names: &[&str]) -> String;
}

impl TowerDisplay for Rat {
    fn tower_string(&self, _names: &[&str]) -> String {
        self.to_string()
    }
}
