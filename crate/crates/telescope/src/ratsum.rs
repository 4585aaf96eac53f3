//! Indefinite summation of polynomials and rational functions.
//!
//! Polynomials are summed through the falling-factorial basis and Stirling
//! numbers of the second kind. Rational functions are reduced by Abramov's
//! method, the discrete analogue of Hermite reduction: f = g(x+1) - g(x) + r
//! with a shift-free denominator in r, and f is summable iff r = 0.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{Field, Rat};
use crate::poly::Poly;
use crate::ratfun::{dispersion, PfMode, RatFun};

/// Stirling number of the second kind.
pub fn stirling2(m: u32, i: u32) -> BigInt {
    if i > m {
        return BigInt::zero();
    }
    if m == 0 {
        return BigInt::one(); // {0 over 0}
    }
    if i == 0 {
        return BigInt::zero();
    }
    // recurrence {m, i} = {m-1, i-1} + i*{m-1, i}
    let mut row: Vec<BigInt> = vec![BigInt::one()]; // {0, 0}
    for mm in 1..=m {
        let mut next = vec![BigInt::zero(); (mm + 1) as usize];
        for ii in 1..=mm {
            let prev_lower = row.get((ii - 1) as usize).cloned().unwrap_or_else(BigInt::zero);
            let prev_same = row.get(ii as usize).cloned().unwrap_or_else(BigInt::zero);
            next[ii as usize] = prev_lower + BigInt::from(ii) * prev_same;
        }
        row = next;
    }
    row.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
}

/// The falling factorial x(x-1)...(x-m+1) as a polynomial.
pub fn falling_factorial(m: u32) -> Poly<Rat> {
    let mut acc = Poly::one();
    for i in 0..m {
        acc = acc.mul(&Poly::from_rats(&[
            crate::field::rat(-(i as i64)),
            crate::field::rat(1),
        ]));
    }
    acc
}

/// A polynomial written in the falling-factorial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FallingFactorialPoly {
    pub coeffs: Vec<Rat>,
}

impl FallingFactorialPoly {
    /// Monomial basis -> falling factorial basis, via x^m = sum {m over i} x^(i falling).
    pub fn from_poly(p: &Poly<Rat>) -> Self {
        let mut coeffs = vec![<Rat as Field>::zero(); p.coeffs().len()];
        for (m, a) in p.coeffs().iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for i in 0..=m {
                let s = stirling2(m as u32, i as u32);
                coeffs[i] += a * Rat::from_integer(s);
            }
        }
        while coeffs.last().map_or(false, |c| Zero::is_zero(c)) {
            coeffs.pop();
        }
        FallingFactorialPoly { coeffs }
    }

    pub fn to_poly(&self) -> Poly<Rat> {
        let mut acc = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&falling_factorial(i as u32).scale(c));
        }
        acc
    }
}

/// Indefinite sum of a polynomial: g with g(x+1) - g(x) = f and g(0) = 0.
pub fn sum_polynomial(f: &Poly<Rat>) -> Poly<Rat> {
    let ff = FallingFactorialPoly::from_poly(f);
    let mut g = Poly::zero();
    for (j, c) in ff.coeffs.iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let scale = c / crate::field::rat(j as i64 + 1);
        g = g.add(&falling_factorial(j as u32 + 1).scale(&scale));
    }
    g
}

/// Additive decomposition f = g(x+1) - g(x) + r with den(r) shift-free.
#[derive(Clone, Debug, PartialEq)]
pub struct AbramovResult {
    pub g: RatFun<Rat>,
    pub r: RatFun<Rat>,
}

/// Abramov reduction: pushes every denominator factor to the leftmost
/// member of its shift orbit, summing the polynomial part along the way.
pub fn abramov_reduce(f: &RatFun<Rat>) -> AbramovResult {
    let (poly_part, proper) = f.split_proper();
    let mut g = RatFun::from_poly(sum_polynomial(&poly_part));
    let mut r = RatFun::zero();
    if proper.is_zero() {
        return AbramovResult { g, r };
    }
    let pf = proper.partial_fractions(PfMode::Irreducible);
    debug_assert!(pf.poly_part.is_zero());
    // group bases into shift orbits
    let mut orbits: Vec<(Poly<Rat>, Vec<(Poly<Rat>, u32, i64)>)> = Vec::new(); // (anchor, [(num, exp, offset)])
    'terms: for (num, base, exp) in pf.terms {
        for (anchor, members) in orbits.iter_mut() {
            if let Some(s) = shift_offset(anchor, &base) {
                members.push((num, exp, s));
                continue 'terms;
            }
        }
        orbits.push((base, vec![(num, exp, 0)]));
    }
    for (anchor, mut members) in orbits {
        // re-anchor at the minimal shift so all offsets are nonnegative
        let min_off = members.iter().map(|&(_, _, s)| s).min().unwrap();
        let anchor = anchor.shift_int(min_off);
        for m in members.iter_mut() {
            m.2 -= min_off;
        }
        for (num, exp, off) in members {
            // num/anchor(x+off)^exp = Delta(chain) + num(x-off)/anchor^exp
            let den = anchor.pow(exp);
            for i in 1..=off {
                g = g.add(&RatFun::new(num.shift_int(-i), den.shift_int(off - i)));
            }
            r = r.add(&RatFun::new(num.shift_int(-off), den));
        }
    }
    debug_assert!(r.is_zero() || r.den().is_constant() || dispersion(r.den()).unwrap() == 0);
    AbramovResult { g, r }
}

/// If q(x) = p(x + s) for an integer s, returns s.
fn shift_offset(p: &Poly<Rat>, q: &Poly<Rat>) -> Option<i64> {
    if p.degree() != q.degree() || p.degree() < 1 {
        return None;
    }
    // both monic irreducible: s is determined by the next-to-leading coefficient
    let m = p.degree() as usize;
    let diff = q.coeff(m - 1) - p.coeff(m - 1);
    let s = diff / crate::field::rat(m as i64);
    let s = crate::field::rat_to_i64(&s)?;
    if p.shift_int(s) == *q {
        Some(s)
    } else {
        None
    }
}

/// f is a difference of rational functions iff its Abramov remainder is 0.
pub fn is_rational_summable(f: &RatFun<Rat>) -> bool {
    abramov_reduce(f).r.is_zero()
}
