//! Independent certification of telescopers and recurrences.
//!
//! Everything a producer emits is re-checkable here: telescoper plus
//! certificate identities (summation and integration case), recurrences
//! against exactly evaluated sums, and the exact sum evaluator itself.
//! Verification is purely symbolic plus exact rational evaluation.

use num_traits::Zero;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::{rat, rat_to_i64, Field, Rat};
use crate::hyper::{shift_k, shift_n, HyperTerm, Nk};
use crate::ore::{Gen, OreOp};
use crate::ratfun::RatFun;

/// Outcome of a verification: ok iff the residual is identically zero.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub ok: bool,
    pub residual: String,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    fn from_residual_nk<K: Field>(residual: &Nk<K>, warnings: Vec<String>) -> Self {
        VerificationReport {
            ok: residual.is_zero(),
            residual: if residual.is_zero() {
                "0".into()
            } else {
                format!("{:?}", residual)
            },
            warnings,
        }
    }
}

/// Checks the creative-telescoping identity for sums:
/// sum_i p_i(n) prod_{j<i} u(n+j,k)  =  R(n,k+1) v(n,k) - R(n,k)
/// as an exact rational identity, where R is the certificate ratio g/f.
pub fn check_telescoper_sum<K: Field>(
    telescoper: &OreOp<K>,
    certificate: &Nk<K>,
    t: &HyperTerm<K>,
) -> VerificationReport {
    assert_eq!(telescoper.gen(), Gen::Shift);
    let mut lhs: Nk<K> = Nk::zero();
    let mut ratio: Nk<K> = Nk::one();
    for i in 0..=telescoper.order().max(0) as usize {
        if i > 0 {
            ratio = ratio.mul(&shift_n(&t.u, i as i64 - 1));
        }
        let p_i: Nk<K> = RatFun::constant(telescoper.coeff(i));
        lhs = lhs.add(&p_i.mul(&ratio));
    }
    let rhs = shift_k(certificate, 1).mul(&t.v).sub(certificate);
    let residual = lhs.sub(&rhs);
    let warnings = certificate_singularities(certificate);
    VerificationReport::from_residual_nk(&residual, warnings)
}

/// Integer and integer-linear k-values where the certificate denominator
/// vanishes; summing the telescoped relation across such points needs
/// manual inspection.
fn certificate_singularities<K: Field>(certificate: &Nk<K>) -> Vec<String> {
    let mut warnings = Vec::new();
    let den = certificate.den();
    if den.degree() <= 0 {
        return warnings;
    }
    for t in crate::zarith::integer_roots_in(den) {
        warnings.push(format!("certificate denominator vanishes at k = {}", t));
    }
    // moving singularities along k = a*n + b for small integer a, b
    for a in -2i64..=2 {
        if a == 0 {
            continue;
        }
        for b in -6i64..=6 {
            let n: RatFun<K> = RatFun::var();
            let point = n
                .mul(&RatFun::from_i64(a))
                .add(&RatFun::from_i64(b));
            let val = den.eval(&point);
            if val.is_zero() {
                let sign = if b < 0 { "-" } else { "+" };
                warnings.push(format!(
                    "certificate denominator vanishes along k = {}*n {} {}",
                    a,
                    sign,
                    b.abs()
                ));
            }
        }
    }
    warnings
}

/// Bivariate rational functions in (x, y) with y outermost.
pub type Xy = Nk<Rat>;

/// Checks P . f = D_y(g) for a differential telescoper P in (x, D_x).
pub fn check_telescoper_integral(
    telescoper: &OreOp<Rat>,
    certificate: &Xy,
    integrand: &Xy,
) -> VerificationReport {
    assert_eq!(telescoper.gen(), Gen::Der);
    let mut lhs = Xy::zero();
    let mut dxf = integrand.clone();
    for i in 0..=telescoper.order().max(0) as usize {
        if i > 0 {
            dxf = crate::ct::der_x(&dxf);
        }
        let c: Xy = RatFun::constant(telescoper.coeff(i));
        lhs = lhs.add(&c.mul(&dxf));
    }
    let rhs = certificate.der(); // d/dy: the outer variable
    let residual = lhs.sub(&rhs);
    VerificationReport::from_residual_nk(&residual, Vec::new())
}

/// Checks that an operator annihilates a list of exact sequence values
/// starting at index `offset`. Points where a coefficient has a pole are
/// skipped.
pub fn check_recurrence_on_values(
    op: &OreOp<Rat>,
    values: &[Rat],
    offset: i64,
) -> Result<VerificationReport> {
    if op.is_zero() {
        return Err(Error::domain("zero operator"));
    }
    if (values.len() as isize) < op.order() + 1 {
        return Err(Error::domain(format!(
            "need at least {} values for an order-{} recurrence",
            op.order() + 1,
            op.order()
        )));
    }
    let mut bad = Vec::new();
    for (n, val) in op.apply_to_values(values, offset) {
        if let Some(v) = val {
            if !Zero::is_zero(&v) {
                bad.push((n, v));
            }
        }
    }
    Ok(VerificationReport {
        ok: bad.is_empty(),
        residual: if bad.is_empty() {
            "0".into()
        } else {
            format!(
                "first violation at n = {}: {}",
                bad[0].0, bad[0].1
            )
        },
        warnings: Vec::new(),
    })
}

/// Summation range for [`eval_sum`].
#[derive(Clone, Copy, Debug)]
pub enum SumRange {
    /// Support detected from the binomial factors of the summand.
    Auto,
    /// Inclusive explicit bounds.
    Explicit(i64, i64),
}

/// Exact value of sum_k f(n, k).
///
/// In auto mode the k-support is read off the binomial factors with
/// positive exponent (binomial(t, b) vanishes for b < 0 or b > t); an
/// unbounded support is an error, as is any undefined evaluation inside
/// the range.
pub fn eval_sum(e: &Expr, n: i64, range: SumRange) -> Result<Rat> {
    let (lo, hi) = match range {
        SumRange::Explicit(lo, hi) => (lo, hi),
        SumRange::Auto => match support_bounds(e, n)? {
            Some(b) => b,
            None => return Ok(<Rat as Field>::zero()), // empty support
        },
    };
    let mut total = <Rat as Field>::zero();
    for k in lo..=hi {
        let mut env = HashMap::new();
        env.insert("n".to_string(), rat(n));
        env.insert("k".to_string(), rat(k));
        total += e.eval(&env)?;
    }
    Ok(total)
}

/// Finite k-support [lo, hi] implied by numerator binomials at a fixed n;
/// Ok(None) means the support is empty.
fn support_bounds(e: &Expr, n: i64) -> Result<Option<(i64, i64)>> {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    let mut empty = false;
    collect_support(e, 1, n, &mut lo, &mut hi, &mut empty)?;
    if empty {
        return Ok(None);
    }
    match (lo, hi) {
        (Some(l), Some(h)) => {
            let l = l.ceil().to_integer();
            let h = h.floor().to_integer();
            let l = rat_to_i64(&Rat::from_integer(l))
                .ok_or_else(|| Error::domain("support bound out of range"))?;
            let h = rat_to_i64(&Rat::from_integer(h))
                .ok_or_else(|| Error::domain("support bound out of range"))?;
            Ok(Some((l, h)))
        }
        _ => Err(Error::domain(
            "cannot detect a finite summation range; pass explicit bounds",
        )),
    }
}

fn collect_support(
    e: &Expr,
    exp: i64,
    n: i64,
    lo: &mut Option<Rat>,
    hi: &mut Option<Rat>,
    empty: &mut bool,
) -> Result<()> {
    match e {
        Expr::Mul(a, b) => {
            collect_support(a, exp, n, lo, hi, empty)?;
            collect_support(b, exp, n, lo, hi, empty)
        }
        Expr::Div(a, b) => {
            collect_support(a, exp, n, lo, hi, empty)?;
            collect_support(b, -exp, n, lo, hi, empty)
        }
        Expr::Neg(a) => collect_support(a, exp, n, lo, hi, empty),
        Expr::Pow(a, b) => {
            if let Some(c) = const_int(b) {
                collect_support(a, exp * c, n, lo, hi, empty)
            } else {
                Ok(())
            }
        }
        Expr::Binomial(top, bot) if exp > 0 => {
            // nonzero requires bot >= 0 and top - bot >= 0 (for the
            // integer-support convention)
            let bk = linear_in_k(bot, n)?;
            let tk = linear_in_k(top, n)?;
            let diff = (tk.0 - bk.0.clone(), tk.1 - bk.1.clone());
            for (alpha, beta) in [bk, diff] {
                // alpha*k + beta >= 0
                if Zero::is_zero(&alpha) {
                    if beta < <Rat as Field>::zero() {
                        *empty = true;
                    }
                } else if alpha > <Rat as Field>::zero() {
                    let bound = -beta / alpha.clone();
                    if lo.as_ref().map_or(true, |cur| bound > *cur) {
                        *lo = Some(bound);
                    }
                } else {
                    let bound = -beta / alpha.clone();
                    if hi.as_ref().map_or(true, |cur| bound < *cur) {
                        *hi = Some(bound);
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn const_int(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(v) => {
            use num_traits::ToPrimitive;
            v.to_i64()
        }
        Expr::Neg(a) => const_int(a).map(|v| -v),
        _ => None,
    }
}

/// The summand argument as alpha*k + beta at fixed n, by evaluation at
/// k = 0 and k = 1.
fn linear_in_k(e: &Expr, n: i64) -> Result<(Rat, Rat)> {
    let mut env = HashMap::new();
    env.insert("n".to_string(), rat(n));
    env.insert("k".to_string(), rat(0));
    let at0 = e.eval(&env)?;
    env.insert("k".to_string(), rat(1));
    let at1 = e.eval(&env)?;
    Ok((at1 - at0.clone(), at0))
}

/// Evaluates a rational function of (n, k) at an exact point; None at a
/// pole.
pub fn eval_nk(f: &Nk<Rat>, n: &Rat, k: &Rat) -> Option<Rat> {
    let eval_poly = |p: &crate::poly::Poly<RatFun<Rat>>| -> Option<Rat> {
        let mut acc = <Rat as Field>::zero();
        for c in p.coeffs().iter().rev() {
            let cv = c.eval(n)?;
            acc = acc * k + cv;
        }
        Some(acc)
    };
    let num = eval_poly(f.num())?;
    let den = eval_poly(f.den())?;
    if Zero::is_zero(&den) {
        None
    } else {
        Some(num / den)
    }
}

/// The boundary term [R(n,k) f(n,k)] taken between k_hi + 1 and k_lo,
/// the inhomogeneous right-hand side produced by summing the telescoped
/// identity over a non-natural range k = k_lo .. k_hi.
pub fn certificate_boundary_term(
    summand: &Expr,
    certificate: &Nk<Rat>,
    n: i64,
    k_lo: i64,
    k_hi: i64,
) -> Result<Rat> {
    let eval_at = |k: i64| -> Result<Rat> {
        let mut env = HashMap::new();
        env.insert("n".to_string(), rat(n));
        env.insert("k".to_string(), rat(k));
        let f = summand.eval(&env)?;
        if Zero::is_zero(&f) {
            // g = R*f vanishes wherever f does
            return Ok(<Rat as Field>::zero());
        }
        let r = eval_nk(certificate, &rat(n), &rat(k))
            .ok_or_else(|| Error::domain(format!("certificate has a pole at k = {}", k)))?;
        Ok(r * f)
    };
    Ok(eval_at(k_hi + 1)? - eval_at(k_lo)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{compile, no_params};

    #[test]
    fn eval_sum_examples() {
        let e = Expr::parse("binomial(n, k)").unwrap();
        assert_eq!(eval_sum(&e, 5, SumRange::Auto).unwrap(), rat(32));
        let e = Expr::parse("binomial(n, k)^2*binomial(n + k, k)^2").unwrap();
        assert_eq!(eval_sum(&e, 2, SumRange::Auto).unwrap(), rat(73));
        let e = Expr::parse("binomial(2*n - 2*k, n - k)*binomial(2*k, k)").unwrap();
        assert_eq!(eval_sum(&e, 3, SumRange::Auto).unwrap(), rat(64));
    }

    #[test]
    fn eval_sum_needs_finite_support() {
        let e = Expr::parse("1/(n^2 + k^2)").unwrap();
        assert!(eval_sum(&e, 3, SumRange::Auto).is_err());
        assert_eq!(
            eval_sum(&e, 1, SumRange::Explicit(0, 1)).unwrap(),
            rat(1) + crate::field::ratio(1, 2)
        );
    }

    #[test]
    fn recurrence_check_on_values() {
        // S - 2 on powers of two
        let op = OreOp::new(Gen::Shift, vec![RatFun::from_i64(-2), RatFun::from_i64(1)]);
        let ok = check_recurrence_on_values(&op, &[rat(1), rat(2), rat(4), rat(8)], 0).unwrap();
        assert!(ok.ok);
        let bad = check_recurrence_on_values(&op, &[rat(1), rat(3), rat(9)], 0).unwrap();
        assert!(!bad.ok);
        assert!(check_recurrence_on_values(&op, &[rat(1)], 0).is_err());
    }

    #[test]
    fn zero_certificate_fails() {
        let t = compile(
            &Expr::parse("binomial(n, k)").unwrap(),
            "n",
            "k",
            &no_params::<Rat>,
        )
        .unwrap();
        let p = OreOp::new(Gen::Shift, vec![RatFun::from_i64(-2), RatFun::from_i64(1)]);
        let report = check_telescoper_sum(&p, &Nk::zero(), &t);
        assert!(!report.ok);
    }

    #[test]
    fn known_certificate_verifies() {
        // (S_n - 2) binomial(n,k) = Delta_k(-binomial(n, k-1)):
        // R = -k/(n + 1 - k)
        let t = compile(
            &Expr::parse("binomial(n, k)").unwrap(),
            "n",
            "k",
            &no_params::<Rat>,
        )
        .unwrap();
        let p = OreOp::new(Gen::Shift, vec![RatFun::from_i64(-2), RatFun::from_i64(1)]);
        let n = crate::hyper::nk_n::<Rat>();
        let k = crate::hyper::nk_k::<Rat>();
        let r = k.neg().div(&n.add(&Nk::one()).sub(&k));
        let report = check_telescoper_sum(&p, &r, &t);
        assert!(report.ok, "residual: {}", report.residual);
    }
}
