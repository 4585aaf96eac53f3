//! Dense univariate polynomials over a generic coefficient field.
//!
//! Coefficients are stored lowest degree first; the leading coefficient of
//! a nonzero polynomial is nonzero. The zero polynomial has an empty
//! coefficient vector and degree -1. Polynomials do not carry a variable
//! name; display takes the name from the call site.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The monomial x.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![F::zero(), F::one()])
    }

    /// c * x^k
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(vals: &[i64]) -> Self {
        Poly::from_coeffs(vals.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == F::one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with deg 0 = -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; panics if rhs is zero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        if self.degree() < rhs.degree() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = rhs.leading().inv();
        let mut rem = self.coeffs.clone();
        let dd = rhs.coeffs.len() - 1;
        let mut quo = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&lead_inv);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].sub(&q.mul(b));
            }
            quo[i - dd] = q;
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.div_rem(rhs).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&F::from_i64(i as i64)));
        }
        Poly::from_coeffs(out)
    }

    /// Exact antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(F::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.div(&F::from_i64(i as i64 + 1)));
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitution of another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// p(x + c).
    pub fn taylor_shift(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        self.compose(&Poly::from_coeffs(vec![c.clone(), F::one()]))
    }

    /// p(x + a) for integer a.
    pub fn shift_int(&self, a: i64) -> Self {
        self.taylor_shift(&F::from_i64(a))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().inv();
        self.scale(&inv)
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        F::poly_gcd(a, b)
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        a.mul(b).exact_div(&Self::gcd(a, b)).monic()
    }

    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }
}

impl Poly<Rat> {
    pub fn from_rats(vals: &[Rat]) -> Self {
        Poly::from_coeffs(vals.to_vec())
    }
}

/// Monic Euclidean gcd; the fallback used by generic fields.
pub fn euclidean_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Extended gcd: returns (g, s, t) with g = s*a + t*b, g monic.
///
/// The cofactors satisfy deg(s) < deg(b/g) and deg(t) < deg(a/g) when both
/// inputs are nonzero and neither divides the other; for equal inputs the
/// cofactor on the first argument is zero.
pub fn poly_xgcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::domain("xgcd of two zero polynomials"));
    }
    // Invariants: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
    let mut r0 = a.clone();
    let mut s0 = Poly::one();
    let mut t0 = Poly::zero();
    let mut r1 = b.clone();
    let mut s1 = Poly::zero();
    let mut t1 = Poly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        s0 = s1;
        t0 = t1;
        r1 = r;
        s1 = s;
        t1 = t;
    }
    let lead_inv = r0.leading().inv();
    Ok((r0.scale(&lead_inv), s0.scale(&lead_inv), t0.scale(&lead_inv)))
}

/// Yun's squarefree decomposition p = unit * prod factor_i^(mult_i).
///
/// Factors are monic, squarefree, pairwise coprime, with strictly
/// ascending multiplicities.
pub fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> Result<(F, Vec<(Poly<F>, u32)>)> {
    if p.is_zero() {
        return Err(Error::domain("squarefree decomposition of zero"));
    }
    let unit = p.leading();
    let p = p.monic();
    if p.is_constant() {
        return Ok((unit, Vec::new()));
    }
    let dp = p.derivative();
    let mut a = Poly::gcd(&p, &dp);
    let mut b = p.exact_div(&a);
    let mut c = dp.exact_div(&a);
    let mut d = c.sub(&b.derivative());
    let mut factors = Vec::new();
    let mut i = 1u32;
    while b.degree() > 0 {
        a = Poly::gcd(&b, &d);
        if a.degree() > 0 {
            factors.push((a.monic(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    Ok((unit, factors))
}

/// Splits p = u * v^m with v the monic squarefree part of highest
/// multiplicity m and gcd(u, v) = 1.
pub fn split<F: Field>(p: &Poly<F>) -> Result<(Poly<F>, Poly<F>, u32)> {
    if p.is_zero() {
        return Err(Error::domain("split of zero polynomial"));
    }
    if p.is_constant() {
        return Ok((p.clone(), Poly::one(), 1));
    }
    let (unit, dec) = squarefree_decomposition(p)?;
    let (v, m) = dec.last().cloned().expect("nonconstant input has factors");
    let u = p.exact_div(&v.pow(m));
    debug_assert!(u.leading() == unit || !u.is_constant());
    Ok((u, v, m))
}

/// Solves b*u = a (mod v) with deg(b) < deg(v).
///
/// Requires gcd(u, v) to divide a; in the common case u and v are coprime.
pub fn solvemod<F: Field>(a: &Poly<F>, u: &Poly<F>, v: &Poly<F>) -> Result<Poly<F>> {
    if v.is_constant() {
        return Err(Error::domain("solvemod: modulus must be nonconstant"));
    }
    if a.is_zero() {
        return Ok(Poly::zero());
    }
    let (g, s, _) = poly_xgcd(u, v)?;
    let (q, r) = a.div_rem(&g);
    if !r.is_zero() {
        return Err(Error::no_solution("solvemod: gcd(u, v) does not divide a"));
    }
    Ok(s.mul(&q).rem(v))
}

/// Resultant of a and b with the convention
/// res(a, b) = lc(b)^deg(a) * prod a(beta) over the roots beta of b.
///
/// With this normalization res(x - c, x) = -c. Computed by a polynomial
/// remainder sequence over the coefficient field; exact throughout.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> F {
    if a.is_zero() || b.is_zero() {
        return F::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = F::one();
    let mut neg = false;
    loop {
        if b.is_constant() {
            let mut lead_pow = F::one();
            let lb = b.leading();
            for _ in 0..a.degree().max(0) {
                lead_pow = lead_pow.mul(&lb);
            }
            let res = acc.mul(&lead_pow);
            return if neg { res.neg() } else { res };
        }
        if a.is_constant() {
            let mut lead_pow = F::one();
            let la = a.leading();
            for _ in 0..b.degree() {
                lead_pow = lead_pow.mul(&la);
            }
            let res = acc.mul(&lead_pow);
            return if neg { res.neg() } else { res };
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return F::zero();
        }
        // res(a, b) = lc(b)^(deg a - deg r) * (-1)^(deg r * deg b) * res(b, r)
        let lb = b.leading();
        for _ in 0..(a.degree() - r.degree()) {
            acc = acc.mul(&lb);
        }
        if (r.degree() * b.degree()) % 2 == 1 {
            neg = !neg;
        }
        a = b;
        b = r;
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Poly<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.lead_sign() < 0 {
                ("-", coeff_string(&c.neg()))
            } else {
                ("+", coeff_string(c))
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "{}", self.var)?;
                } else {
                    write!(f, "{}^{}", self.var, i)?;
                }
            }
        }
        Ok(())
    }
}

/// True if the string is one balanced parenthesis group.
fn is_enclosed(s: &str) -> bool {
    if !(s.starts_with('(') && s.ends_with(')')) {
        return false;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// Renders a coefficient, parenthesizing anything with top-level structure
/// so the output re-parses unambiguously.
fn coeff_string<F: Field>(c: &F) -> String {
    if let Some(r) = c.as_rat() {
        return r.to_string();
    }
    let s = c.to_string();
    let mut depth = 0i32;
    let mut top_level_op = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ' ' | '/' if depth == 0 => {
                top_level_op = true;
                break;
            }
            _ => {}
        }
    }
    if !top_level_op || is_enclosed(&s) {
        s
    } else {
        format!("({})", s)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn qp(v: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(v)
    }

    #[test]
    fn gcd_shared_root() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let g = Poly::gcd(&qp(&[-1, 0, 1]), &qp(&[1, -2, 1]));
        assert_eq!(g, qp(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let p = qp(&[2, 4]);
        assert_eq!(Poly::gcd(&p, &Poly::zero()), qp(&[1, 2]).scale(&ratio_half()));
        assert_eq!(Poly::gcd(&Poly::<Rat>::zero(), &Poly::zero()), Poly::zero());
    }

    fn ratio_half() -> Rat {
        crate::field::ratio(1, 2)
    }

    #[test]
    fn gcd_from_log_part_worked_example() {
        // gcd(x^3 + x, 1 - (3x^2 + 1)) = x
        let a = qp(&[0, 1, 0, 1]);
        let b = qp(&[1]).sub(&qp(&[1, 0, 3]));
        assert_eq!(Poly::gcd(&a, &b), qp(&[0, 1]));
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = qp(&[1, 1]);
        let b = qp(&[1, 0, 1]);
        let (g, s, t) = poly_xgcd(&a, &b).unwrap();
        assert_eq!(g, Poly::one());
        // s = -(x - 1)/2, t = 1/2
        assert_eq!(s, qp(&[1, -1]).scale(&ratio_half()));
        assert_eq!(t, Poly::constant(ratio_half()));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), Poly::one());

        let (g, s, t) = poly_xgcd(&qp(&[-1, 1]), &qp(&[1, 1])).unwrap();
        assert_eq!(g, Poly::one());
        assert_eq!(s, Poly::constant(-ratio_half()));
        assert_eq!(t, Poly::constant(ratio_half()));
    }

    #[test]
    fn xgcd_equal_inputs_tie_break() {
        let x = qp(&[0, 1]);
        let (g, s, t) = poly_xgcd(&x, &x).unwrap();
        assert_eq!(g, x);
        assert!(s.is_zero());
        assert_eq!(t, Poly::one());
        assert!(poly_xgcd::<Rat>(&Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn squarefree_decomposition_example() {
        // x^8 + 6x^6 + 12x^4 + 8x^2 = x^2 * (x^2 + 2)^3
        let p = qp(&[0, 0, 8, 0, 12, 0, 6, 0, 1]);
        let (unit, dec) = squarefree_decomposition(&p).unwrap();
        assert_eq!(unit, rat(1));
        assert_eq!(dec, vec![(qp(&[0, 1]), 2), (qp(&[2, 0, 1]), 3)]);

        let p = qp(&[1, 0, 1]);
        let (_, dec) = squarefree_decomposition(&p).unwrap();
        assert_eq!(dec, vec![(qp(&[1, 0, 1]), 1)]);

        // (x+4)^2 (x+5)^3
        let p = qp(&[4, 1]).pow(2).mul(&qp(&[5, 1]).pow(3));
        let (_, dec) = squarefree_decomposition(&p).unwrap();
        assert_eq!(dec, vec![(qp(&[4, 1]), 2), (qp(&[5, 1]), 3)]);
    }

    #[test]
    fn split_examples() {
        let p = qp(&[0, 0, 8, 0, 12, 0, 6, 0, 1]);
        let (u, v, m) = split(&p).unwrap();
        assert_eq!((u, v, m), (qp(&[0, 0, 1]), qp(&[2, 0, 1]), 3));

        let (u, v, m) = split(&qp(&[7])).unwrap();
        assert_eq!((u, v, m), (qp(&[7]), Poly::one(), 1));

        let (u, v, m) = split(&qp(&[0, 0, 1])).unwrap();
        assert_eq!((u, v, m), (Poly::one(), qp(&[0, 1]), 2));

        assert!(split::<Rat>(&Poly::zero()).is_err());
    }

    #[test]
    fn solvemod_examples() {
        // b*(x+1) = x (mod x^2+1)  =>  b = (x+1)/2
        let b = solvemod(&qp(&[0, 1]), &qp(&[1, 1]), &qp(&[1, 0, 1])).unwrap();
        assert_eq!(b, qp(&[1, 1]).scale(&ratio_half()));
        let check = b.mul(&qp(&[1, 1])).rem(&qp(&[1, 0, 1]));
        assert_eq!(check, qp(&[0, 1]));

        let b = solvemod(&qp(&[1]), &qp(&[2]), &qp(&[0, 1])).unwrap();
        assert_eq!(b, Poly::constant(ratio_half()));

        let b = solvemod(&Poly::<Rat>::zero(), &qp(&[1, 1]), &qp(&[1, 0, 1])).unwrap();
        assert!(b.is_zero());

        // gcd(u, v) = x does not divide 1
        assert!(solvemod(&qp(&[1]), &qp(&[0, 1]), &qp(&[0, 0, 1])).is_err());
    }

    #[test]
    fn resultant_sign_convention() {
        // res(x - c, x) = -c
        let c = rat(5);
        let r = resultant(&Poly::from_coeffs(vec![-c.clone(), rat(1)]), &qp(&[0, 1]));
        assert_eq!(r, -c);
    }

    #[test]
    fn taylor_shift_round_trip() {
        let p = qp(&[3, -2, 0, 7]);
        assert_eq!(p.shift_int(4).shift_int(-4), p);
    }
}

/// Renders a polynomial with tower-aware coefficient names: the
/// polynomial variable is names[0], coefficients use names[1..].
pub fn poly_tower_string<F: Field + crate::field::TowerDisplay>(
    p: &Poly<F>,
    names: &[&str],
) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let var = names.first().copied().unwrap_or("x");
    let rest = if names.len() > 1 { &names[1..] } else { &names[..0] };
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag_elem) = if c.lead_sign() < 0 {
            (true, c.neg())
        } else {
            (false, c.clone())
        };
        let raw = mag_elem.tower_string(rest);
        let mag = wrap_if_structured(&raw);
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if i == 0 {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            if i == 1 {
                out.push_str(var);
            } else {
                out.push_str(&format!("{}^{}", var, i));
            }
        }
    }
    out
}

fn wrap_if_structured(s: &str) -> String {
    let mut depth = 0i32;
    let mut top_level_op = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ' ' | '/' if depth == 0 => {
                top_level_op = true;
                break;
            }
            _ => {}
        }
    }
    if !top_level_op || is_enclosed(s) {
        s.to_string()
    } else {
        format!("({})", s)
    }
}
