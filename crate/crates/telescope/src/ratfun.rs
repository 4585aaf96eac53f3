//! Reduced fractions of polynomials over a field.
//!
//! `RatFun<F>` is the fraction field of `F[x]`: numerator and denominator
//! are kept coprime with a monic denominator, so equality is structural.
//! Since `RatFun<F>` implements [`Field`] itself, stacking it builds the
//! rational-function towers Q(x), Q(n)(k), ... that the summation
//! algorithms run over.

use crate::error::{Error, Result};
use crate::field::{Field, Rat, SpecCtx};
use crate::poly::{self, Poly};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    /// Builds the reduced fraction num/den. Panics if den = 0.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        let lead_inv = den.leading().inv();
        RatFun {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    /// num/den already coprime with monic den.
    fn raw(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(!den.is_zero());
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The variable x as a rational function.
    pub fn var() -> Self {
        RatFun::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_proper(&self) -> bool {
        self.num.degree() < self.den.degree()
    }

    /// Splits into polynomial part and proper remainder.
    pub fn split_proper(&self) -> (Poly<F>, RatFun<F>) {
        let (q, r) = self.num.div_rem(&self.den);
        (q, RatFun::raw(r, self.den.clone()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatFun::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun::raw(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFun::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFun::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        if e < 0 {
            self.inv().pow_i64(-e)
        } else {
            RatFun::raw(self.num.pow(e as u32), self.den.pow(e as u32))
        }
    }

    /// Quotient-rule derivative with respect to the main variable.
    pub fn der(&self) -> Self {
        RatFun::new(
            self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    /// f(x + a) for integer a.
    pub fn shift(&self, a: i64) -> Self {
        // shifting preserves both coprimality and the monic denominator
        RatFun::raw(self.num.shift_int(a), self.den.shift_int(a))
    }

    /// Evaluation; None at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d))
    }

    /// Applies a coefficient-field map to numerator and denominator.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFun<G> {
        RatFun::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFunDisplay<'a, F> {
        RatFunDisplay { rf: self, var }
    }
}

impl<F: Field> Field for RatFun<F> {
    fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        RatFun::inv(self)
    }
    fn from_i64(v: i64) -> Self {
        RatFun::constant(F::from_i64(v))
    }
    fn from_rat(v: &Rat) -> Self {
        RatFun::constant(F::from_rat(v))
    }
    fn as_rat(&self) -> Option<Rat> {
        if !self.den.is_one() || self.num.degree() > 0 {
            return None;
        }
        self.num.coeff(0).as_rat()
    }
    fn specialize(&self, ctx: &SpecCtx, level: usize) -> Option<Rat> {
        let spec_poly = |p: &Poly<F>| -> Option<Rat> {
            let mut acc = Rat::zero();
            let x = ctx.point(level);
            for c in p.coeffs().iter().rev() {
                let cv = c.specialize(ctx, level + 1)?;
                acc = Field::add(&Field::mul(&acc, &x), &cv);
            }
            Some(acc)
        };
        let n = spec_poly(&self.num)?;
        let d = spec_poly(&self.den)?;
        if Field::is_zero(&d) {
            None
        } else {
            Some(Field::div(&n, &d))
        }
    }
    fn content_hint(&self) -> Rat {
        let mut c = Rat::zero();
        for q in self.num.coeffs() {
            c = crate::field::rat_gcd(&c, &q.content_hint());
        }
        c
    }
    fn lead_sign(&self) -> i32 {
        self.num.leading().lead_sign()
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        bivariate_gcd(a, b)
    }
}

// ---- gcd of polynomials over a rational-function field -------------------

/// Monic gcd in K(x)[y], primarily by evaluation of x and interpolation
/// of the gcd images (with an exact divisibility check), falling back to
/// the subresultant remainder sequence when evaluation is inconclusive.
fn bivariate_gcd<K: Field>(a: &Poly<RatFun<K>>, b: &Poly<RatFun<K>>) -> Poly<RatFun<K>> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree() == 0 || b.degree() == 0 {
        return Poly::one();
    }
    let ca = clear_and_primitive(a);
    let cb = clear_and_primitive(b);
    if let Some(g) = gcd_by_evaluation(&ca, &cb) {
        return g;
    }
    subresultant_gcd(ca, cb)
}

/// Brown-style gcd: evaluate the inner variable at integer points, take
/// univariate gcds over K, and interpolate the scaled images. Returns
/// None when too many evaluation points degenerate.
fn gcd_by_evaluation<K: Field>(ca: &YPoly<K>, cb: &YPoly<K>) -> Option<Poly<RatFun<K>>> {
    let da = ydeg(ca);
    let db = ydeg(cb);
    let lc_a = &ca[da];
    let lc_b = &cb[db];
    let gamma = Poly::gcd(lc_a, lc_b);
    let xdeg = |p: &YPoly<K>| p.iter().map(|c| c.degree()).max().unwrap_or(-1);
    let needed = (xdeg(ca).min(xdeg(cb)) + gamma.degree() + 1).max(1) as usize;
    let eval_at = |p: &YPoly<K>, t: &K| -> Poly<K> {
        Poly::from_coeffs(p.iter().map(|c| c.eval(t)).collect())
    };
    let mut points: Vec<Rat> = Vec::new();
    let mut images: Vec<Poly<K>> = Vec::new();
    let mut gcd_deg: isize = isize::MAX;
    let mut t: i64 = 0;
    let mut bad = 0usize;
    while points.len() < needed {
        if bad > 40 + 4 * needed {
            return None;
        }
        let tv = K::from_i64(t);
        let point = crate::field::rat(t);
        t += 1;
        // degree drop makes the point unusable
        if lc_a.eval(&tv).is_zero() || lc_b.eval(&tv).is_zero() {
            bad += 1;
            continue;
        }
        let ga = eval_at(ca, &tv);
        let gb = eval_at(cb, &tv);
        let g = Poly::gcd(&ga, &gb);
        if g.degree() == 0 {
            return Some(Poly::one());
        }
        if g.degree() < gcd_deg {
            // sharper degree: earlier points were unlucky
            gcd_deg = g.degree();
            points.clear();
            images.clear();
        } else if g.degree() > gcd_deg {
            bad += 1;
            continue;
        }
        images.push(g.scale(&gamma.eval(&tv)));
        points.push(point);
    }
    // interpolate each y-coefficient in the inner variable
    let dim = gcd_deg as usize + 1;
    let mut coeffs: Vec<Poly<K>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let values: Vec<K> = images.iter().map(|g| g.coeff(j)).collect();
        coeffs.push(lagrange_interpolate(&points, &values));
    }
    let candidate = primitive_part(&coeffs);
    if ydivides(&candidate, ca) && ydivides(&candidate, cb) {
        Some(to_ratfun_poly(&candidate).monic())
    } else {
        None
    }
}

/// Exact divisibility test in K[x][y] via pseudo-division by the leading
/// coefficient with trailing exact divisions.
fn ydivides<K: Field>(d: &YPoly<K>, a: &YPoly<K>) -> bool {
    if d.iter().all(|c| c.is_zero()) {
        return a.iter().all(|c| c.is_zero());
    }
    let dd = ydeg(d);
    let lead = &d[dd];
    let mut rem = ytrim(a.clone());
    while !rem.is_empty() && ydeg(&rem) >= dd {
        let dr = ydeg(&rem);
        let (q, r) = rem[dr].div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        for (i, c) in d.iter().enumerate() {
            let idx = dr - dd + i;
            rem[idx] = rem[idx].sub(&q.mul(c));
        }
        rem = ytrim(rem);
    }
    rem.is_empty()
}

fn subresultant_gcd<K: Field>(mut r0: YPoly<K>, mut r1: YPoly<K>) -> Poly<RatFun<K>> {
    if ydeg(&r0) < ydeg(&r1) {
        std::mem::swap(&mut r0, &mut r1);
    }
    let mut g: Poly<K> = Poly::one();
    let mut h: Poly<K> = Poly::one();
    loop {
        let d = ydeg(&r0) - ydeg(&r1);
        let rem = pseudo_rem(&r0, &r1, d);
        if rem.iter().all(|c| c.is_zero()) {
            let prim = primitive_part(&r1);
            return to_ratfun_poly(&prim).monic();
        }
        if ydeg(&rem) == 0 {
            return Poly::one();
        }
        r0 = r1;
        // divisor g * h^d
        let mut div = g.clone();
        for _ in 0..d {
            div = div.mul(&h);
        }
        r1 = ytrim(rem.into_iter().map(|c| c.exact_div(&div)).collect());
        g = r0[ydeg(&r0)].clone();
        // h = h^(1-d) g^d
        h = if d == 0 {
            h
        } else {
            let mut num = Poly::one();
            for _ in 0..d {
                num = num.mul(&g);
            }
            if d == 1 {
                num
            } else {
                let mut den = Poly::one();
                for _ in 0..d - 1 {
                    den = den.mul(&h);
                }
                num.exact_div(&den)
            }
        };
    }
}

type YPoly<K> = Vec<Poly<K>>;

fn ydeg<K: Field>(p: &YPoly<K>) -> usize {
    let mut d = p.len();
    while d > 0 && p[d - 1].is_zero() {
        d -= 1;
    }
    d.saturating_sub(1)
}

fn ytrim<K: Field>(mut p: YPoly<K>) -> YPoly<K> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn clear_and_primitive<K: Field>(p: &Poly<RatFun<K>>) -> YPoly<K> {
    let mut den = Poly::one();
    for c in p.coeffs() {
        den = Poly::lcm(&den, c.den());
    }
    let cleared: YPoly<K> = p
        .coeffs()
        .iter()
        .map(|c| c.num().mul(&den.exact_div(c.den())))
        .collect();
    primitive_part(&cleared)
}

fn primitive_part<K: Field>(p: &YPoly<K>) -> YPoly<K> {
    let mut content = Poly::zero();
    for c in p {
        content = Poly::gcd(&content, c);
        if content.is_constant() && !content.is_zero() {
            break;
        }
    }
    if content.degree() > 0 {
        p.iter().map(|c| c.exact_div(&content)).collect()
    } else {
        p.clone()
    }
}

/// lc(r1)^(d+1) * r0 rem r1 in K[x][y].
fn pseudo_rem<K: Field>(r0: &YPoly<K>, r1: &YPoly<K>, d: usize) -> YPoly<K> {
    let d1 = ydeg(r1);
    let lead = r1[d1].clone();
    let mut rem: YPoly<K> = ytrim(r0.clone());
    let mut scale_left = (d + 1) as i64;
    while !rem.is_empty() && ydeg(&rem) >= d1 {
        let dr = ydeg(&rem);
        let q = rem[dr].clone();
        // rem = lead*rem - q*y^(dr-d1)*r1
        let mut next: YPoly<K> = rem.iter().map(|c| c.mul(&lead)).collect();
        for (i, c) in r1.iter().enumerate() {
            let idx = dr - d1 + i;
            next[idx] = next[idx].sub(&q.mul(c));
        }
        scale_left -= 1;
        rem = ytrim(next);
    }
    for _ in 0..scale_left.max(0) {
        rem = rem.iter().map(|c| c.mul(&lead)).collect();
    }
    rem
}

fn to_ratfun_poly<K: Field>(p: &YPoly<K>) -> Poly<RatFun<K>> {
    Poly::from_coeffs(p.iter().map(|c| RatFun::from_poly(c.clone())).collect())
}

pub struct RatFunDisplay<'a, F: Field> {
    rf: &'a RatFun<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for RatFunDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.den.is_one() {
            if self.rf.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                write!(f, "({})", self.rf.num.display(self.var))
            } else {
                write!(f, "{}", self.rf.num.display(self.var))
            }
        } else {
            write!(
                f,
                "({})/({})",
                self.rf.num.display(self.var),
                self.rf.den.display(self.var)
            )
        }
    }
}

impl<F: Field> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// Partial fraction decomposition: poly_part + sum numerator/base^exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions<F: Field> {
    pub poly_part: Poly<F>,
    pub terms: Vec<(Poly<F>, Poly<F>, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PfMode {
    Squarefree,
    Irreducible,
}

impl<F: Field> PartialFractions<F> {
    /// Recombines the decomposition into a single rational function.
    pub fn recombine(&self) -> RatFun<F> {
        let mut acc = RatFun::from_poly(self.poly_part.clone());
        for (num, base, exp) in &self.terms {
            acc = acc.add(&RatFun::new(num.clone(), base.pow(*exp)));
        }
        acc
    }
}

impl RatFun<Rat> {
    /// Partial fraction decomposition with respect to a squarefree or an
    /// irreducible factorization of the denominator.
    pub fn partial_fractions(&self, mode: PfMode) -> PartialFractions<Rat> {
        let (poly_part, proper) = self.split_proper();
        let mut terms = Vec::new();
        if proper.is_zero() {
            return PartialFractions { poly_part, terms };
        }
        let den = proper.den().clone();
        let factors: Vec<(Poly<Rat>, u32)> = match mode {
            PfMode::Squarefree => poly::squarefree_decomposition(&den)
                .expect("denominator is nonzero")
                .1,
            PfMode::Irreducible => crate::zarith::factor_rationals(&den)
                .expect("denominator is nonzero")
                .1,
        };
        // a/den = sum a_i / q_i^e_i with a_i = a * (den/q_i^e_i)^(-1) mod q_i^e_i
        for (q, e) in factors {
            let qe = q.pow(e);
            let cofactor = den.exact_div(&qe);
            let ai = poly::solvemod(proper.num(), &cofactor, &qe)
                .expect("cofactor is invertible modulo q^e");
            match mode {
                PfMode::Squarefree => {
                    if !ai.is_zero() {
                        terms.push((ai, q, e));
                    }
                }
                PfMode::Irreducible => {
                    // q-adic digits: a_i = sum b_j q^(e-j), deg b_j < deg q
                    let mut rest = ai;
                    let mut j = e;
                    while j >= 1 {
                        let (quo, rem) = rest.div_rem(&q);
                        if !rem.is_zero() {
                            terms.push((rem, q.clone(), j));
                        }
                        rest = quo;
                        j -= 1;
                    }
                    debug_assert!(rest.is_zero());
                }
            }
        }
        terms.sort_by(|a, b| (a.1.degree(), a.2).cmp(&(b.1.degree(), b.2)));
        PartialFractions { poly_part, terms }
    }
}

/// The dispersion of a nonconstant polynomial: the largest natural i such
/// that gcd(p(x), p(x+i)) is nonconstant. Zero means shift-free.
pub fn dispersion(p: &Poly<Rat>) -> Result<u64> {
    if p.is_constant() {
        return Err(Error::domain("dispersion of a constant polynomial"));
    }
    let cands = shift_candidates(p, p);
    Ok(cands.into_iter().max().unwrap_or(0))
}

/// All natural i with gcd(q(x), r(x+i)) nonconstant, in ascending order:
/// the nonnegative integer roots of res_x(q(x), r(x+j)) as a polynomial
/// in j.
pub fn shift_candidates<K: Field>(q: &Poly<K>, r: &Poly<K>) -> Vec<u64> {
    if q.is_constant() || r.is_constant() {
        return Vec::new();
    }
    let res_poly = resultant_in_shift(q, r);
    if res_poly.is_zero() {
        // can only happen for q, r with a common factor at every shift
        return Vec::new();
    }
    let mut out: Vec<u64> = crate::zarith::integer_roots_in(&res_poly)
        .into_iter()
        .filter(|&t| t >= 0)
        .map(|t| t as u64)
        .collect();
    out.sort();
    out
}

/// res_x(q(x), r(x+j)) as a polynomial in the shift j, computed by
/// evaluating at integer shifts and interpolating; far cheaper than a
/// remainder sequence over K(j).
pub fn resultant_in_shift<K: Field>(q: &Poly<K>, r: &Poly<K>) -> Poly<K> {
    let bound = (q.degree() * r.degree()) as usize;
    let mut points: Vec<Rat> = Vec::with_capacity(bound + 1);
    let mut values: Vec<K> = Vec::with_capacity(bound + 1);
    let mut t: i64 = 0;
    while points.len() <= bound {
        let shifted = r.shift_int(t);
        // degree never drops under a shift, so every point is usable
        values.push(poly::resultant(q, &shifted));
        points.push(crate::field::rat(t));
        t += 1;
    }
    lagrange_interpolate(&points, &values)
}

/// The unique polynomial of degree < points.len() through
/// (points[i], values[i]), with rational interpolation points.
pub fn lagrange_interpolate<K: Field>(points: &[Rat], values: &[K]) -> Poly<K> {
    assert_eq!(points.len(), values.len());
    let mut acc: Poly<K> = Poly::zero();
    // Newton form: divided differences over K
    let mut table: Vec<K> = values.to_vec();
    let n = points.len();
    let mut coeffs: Vec<K> = Vec::with_capacity(n);
    coeffs.push(table[0].clone());
    for level in 1..n {
        for i in 0..n - level {
            let dx = K::from_rat(&(points[i + level].clone() - points[i].clone()));
            table[i] = table[i + 1].sub(&table[i]).div(&dx);
        }
        coeffs.push(table[0].clone());
    }
    // horner-style reconstruction: acc = coeffs[n-1]; acc = acc*(x - x_i) + coeffs[i]
    for i in (0..n).rev() {
        let xi = Poly::from_coeffs(vec![K::from_rat(&(-points[i].clone())), K::one()]);
        acc = acc.mul(&xi).add(&Poly::constant(coeffs[i].clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn qp(v: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(v)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun<Rat> {
        RatFun::new(qp(n), qp(d))
    }

    #[test]
    fn der_examples() {
        // (x+1)/x -> -1/x^2 and 1/x -> -1/x^2
        let expect = rf(&[-1], &[0, 0, 1]);
        assert_eq!(rf(&[1, 1], &[0, 1]).der(), expect);
        assert_eq!(rf(&[1], &[0, 1]).der(), expect);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(rf(&[1], &[0, 1]).shift(1), rf(&[1], &[1, 1]));
        assert_eq!(rf(&[0, 0, 1], &[1]).shift(-1), rf(&[1, -2, 1], &[1]));
        let f = rf(&[1], &[0, 1, 1]); // 1/(x(x+1))
        assert_eq!(f.shift(1), rf(&[1], &[2, 3, 1]));
        // round trip
        assert_eq!(f.shift(3).shift(-3), f);
    }

    #[test]
    fn partial_fractions_squarefree_paper_shape() {
        // (x^7-24x^4-4x^2+8x-8)/(x^8+6x^6+12x^4+8x^2)
        //   = (x-1)/x^2 + (x^4-6x^3-18x^2-12x+8)/(x^2+2)^3
        let f = rf(
            &[-8, 8, -4, 0, -24, 0, 0, 1],
            &[0, 0, 8, 0, 12, 0, 6, 0, 1],
        );
        let pf = f.partial_fractions(PfMode::Squarefree);
        assert!(pf.poly_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                (qp(&[-1, 1]), qp(&[0, 1]), 2),
                (qp(&[8, -12, -18, -6, 1]), qp(&[2, 0, 1]), 3),
            ]
        );
        assert_eq!(pf.recombine(), f);
    }

    #[test]
    fn partial_fractions_irreducible() {
        // 1/(x^3+x) = 1/x - x/(x^2+1)
        let f = rf(&[1], &[0, 1, 0, 1]);
        let pf = f.partial_fractions(PfMode::Irreducible);
        assert!(pf.poly_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                (qp(&[1]), qp(&[0, 1]), 1),
                (qp(&[0, -1]), qp(&[1, 0, 1]), 1),
            ]
        );
        assert_eq!(pf.recombine(), f);

        // polynomial input
        let p = RatFun::from_poly(qp(&[1, 2, 3]));
        let pf = p.partial_fractions(PfMode::Irreducible);
        assert_eq!(pf.poly_part, qp(&[1, 2, 3]));
        assert!(pf.terms.is_empty());
    }

    #[test]
    fn dispersion_examples() {
        // x(x+3)(x^2-2): roots 0, -3, +-sqrt(2) -> dispersion 3
        let p = qp(&[0, 1]).mul(&qp(&[3, 1])).mul(&qp(&[-2, 0, 1]));
        assert_eq!(dispersion(&p).unwrap(), 3);
        assert_eq!(dispersion(&qp(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(dispersion(&qp(&[0, 1, 1])).unwrap(), 1);
        assert!(dispersion(&qp(&[5])).is_err());
        let _ = rat(0);
    }
}

impl<F: Field + crate::field::TowerDisplay> crate::field::TowerDisplay for RatFun<F> {
    fn tower_string(&self, names: &[&str]) -> String {
        let num = crate::poly::poly_tower_string(&self.num, names);
        if self.den.is_one() {
            if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", num)
            } else {
                num
            }
        } else {
            format!("({})/({})", num, crate::poly::poly_tower_string(&self.den, names))
        }
    }
}
