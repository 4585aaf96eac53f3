//! Hypergeometric terms and their summation algorithms.
//!
//! A bivariate hypergeometric term is represented by its two shift
//! quotients u(n,k) = f(n+1,k)/f(n,k) and v(n,k) = f(n,k+1)/f(n,k),
//! which live in the tower Q(params)(n)(k) spelled `Nk<K>`. On top of
//! this sit Gosper's algorithm (indefinite summation), its parameterized
//! variant, and Zeilberger's algorithm (definite summation by creative
//! telescoping), together with the Apagodu-Zeilberger order bound and
//! WZ pairs.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::{rat_to_i64, Field};
use crate::linalg::{solve_dense, Matrix};
use crate::ore::{Gen, OreOp};
use crate::poly::Poly;
use crate::ratfun::{shift_candidates, RatFun};

/// Rational functions in n and k over the parameter field K: the variable
/// k sits outermost, n inside it.
pub type Nk<K> = RatFun<RatFun<K>>;

/// The variable n as an element of Nk.
pub fn nk_n<K: Field>() -> Nk<K> {
    RatFun::constant(RatFun::var())
}

/// The variable k as an element of Nk.
pub fn nk_k<K: Field>() -> Nk<K> {
    RatFun::var()
}

/// f(n + a, k).
pub fn shift_n<K: Field>(f: &Nk<K>, a: i64) -> Nk<K> {
    if a == 0 {
        return f.clone();
    }
    f.map_coeffs(|c| c.shift(a))
}

/// f(n, k + a).
pub fn shift_k<K: Field>(f: &Nk<K>, a: i64) -> Nk<K> {
    f.shift(a)
}

/// A hypergeometric term given by its shift quotients.
#[derive(Clone, Debug)]
pub struct HyperTerm<K: Field> {
    pub u: Nk<K>,
    pub v: Nk<K>,
    pub source: Option<Expr>,
}

impl<K: Field> HyperTerm<K> {
    pub fn from_quotients(u: Nk<K>, v: Nk<K>) -> Self {
        HyperTerm { u, v, source: None }
    }
}

/// Checks the compatibility condition u(n,k+1) v(n,k) = u(n,k) v(n+1,k)
/// as an exact rational identity.
pub fn compatibility_check<K: Field>(t: &HyperTerm<K>) -> bool {
    let lhs = shift_k(&t.u, 1).mul(&t.v);
    let rhs = t.u.mul(&shift_n(&t.v, 1));
    lhs == rhs
}

/// Resolves free symbols (anything except the two running variables) to
/// elements of the parameter field.
pub type Resolver<'a, K> = &'a dyn Fn(&str) -> Result<K>;

/// Rejects every parameter symbol; for closed terms in n and k only.
pub fn no_params<K: Field>(name: &str) -> Result<K> {
    Err(Error::unsupported(format!(
        "unexpected symbol '{}' (expected only the running variables)",
        name
    )))
}

// ---- expression compiler ------------------------------------------------

/// Multiplicative factor shapes recognized by the compiler.
enum Special<K: Field> {
    /// (integer-linear argument)!
    Factorial(LinForm<K>),
    /// pochhammer(a, b) with both arguments integer-linear
    Pochhammer(LinForm<K>, LinForm<K>),
    /// z^(integer-linear) for a constant or parameter base z
    Power(Nk<K>, LinForm<K>),
}

/// a*n + b*k + c with integer a, b and constant c.
struct LinForm<K: Field> {
    n_coeff: i64,
    k_coeff: i64,
    value: Nk<K>,
}

fn linear_form<K: Field>(value: Nk<K>, what: &str) -> Result<LinForm<K>> {
    let num = value
        .as_poly()
        .ok_or_else(|| Error::unsupported(format!("{} must be polynomial", what)))?;
    if num.degree() > 1 {
        return Err(Error::unsupported(format!("{} must be linear in k", what)));
    }
    let k_lead = num.coeff(1);
    let k_coeff = k_lead
        .as_rat()
        .and_then(|r| rat_to_i64(&r))
        .ok_or_else(|| Error::unsupported(format!("{} must have an integer k-coefficient", what)))?;
    let inner = num.coeff(0);
    let inner_poly = inner
        .as_poly()
        .ok_or_else(|| Error::unsupported(format!("{} must be polynomial in n", what)))?;
    if inner_poly.degree() > 1 {
        return Err(Error::unsupported(format!("{} must be linear in n", what)));
    }
    let n_coeff = inner_poly
        .coeff(1)
        .as_rat()
        .and_then(|r| rat_to_i64(&r))
        .ok_or_else(|| Error::unsupported(format!("{} must have an integer n-coefficient", what)))?;
    Ok(LinForm {
        n_coeff,
        k_coeff,
        value,
    })
}

/// Evaluates a special-free subexpression into the rational function
/// tower (no factorial-type nodes allowed).
pub fn expr_to_rational<K: Field>(
    e: &Expr,
    n_name: &str,
    k_name: &str,
    resolve: Resolver<K>,
) -> Result<Nk<K>> {
    match e {
        Expr::Int(v) => {
            let r = crate::field::Rat::from_integer(v.clone());
            Ok(Nk::from_rat(&r))
        }
        Expr::Var(name) => {
            if name == n_name {
                Ok(nk_n())
            } else if name == k_name {
                Ok(nk_k())
            } else {
                Ok(RatFun::constant(RatFun::constant(resolve(name)?)))
            }
        }
        Expr::Add(a, b) => Ok(expr_to_rational(a, n_name, k_name, resolve)?
            .add(&expr_to_rational(b, n_name, k_name, resolve)?)),
        Expr::Sub(a, b) => Ok(expr_to_rational(a, n_name, k_name, resolve)?
            .sub(&expr_to_rational(b, n_name, k_name, resolve)?)),
        Expr::Mul(a, b) => Ok(expr_to_rational(a, n_name, k_name, resolve)?
            .mul(&expr_to_rational(b, n_name, k_name, resolve)?)),
        Expr::Div(a, b) => {
            let d = expr_to_rational(b, n_name, k_name, resolve)?;
            if d.is_zero() {
                return Err(Error::domain("division by zero"));
            }
            Ok(expr_to_rational(a, n_name, k_name, resolve)?.div(&d))
        }
        Expr::Neg(a) => Ok(expr_to_rational(a, n_name, k_name, resolve)?.neg()),
        Expr::Pow(a, b) => {
            let e_int = const_integer(b)
                .ok_or_else(|| Error::unsupported("non-constant exponent in rational part"))?;
            let base = expr_to_rational(a, n_name, k_name, resolve)?;
            if base.is_zero() && e_int < 0 {
                return Err(Error::domain("zero to a negative power"));
            }
            Ok(base.pow_i64(e_int))
        }
        _ => Err(Error::unsupported(
            "factorial-type factor in a position where a rational expression is required",
        )),
    }
}

fn const_integer(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(v) => {
            use num_traits::ToPrimitive;
            v.to_i64()
        }
        Expr::Neg(a) => const_integer(a).map(|v| -v),
        _ => None,
    }
}

fn contains_special(e: &Expr) -> bool {
    match e {
        Expr::Int(_) | Expr::Var(_) => false,
        Expr::Neg(a) => contains_special(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            contains_special(a) || contains_special(b)
        }
        Expr::Pow(a, b) => contains_special(a) || const_integer(b).is_none(),
        Expr::Factorial(_) | Expr::Binomial(..) | Expr::Pochhammer(..) => true,
    }
}

fn collect_factors<K: Field>(
    e: &Expr,
    exp: i64,
    n_name: &str,
    k_name: &str,
    resolve: Resolver<K>,
    rational: &mut Nk<K>,
    specials: &mut Vec<(Special<K>, i64)>,
) -> Result<()> {
    if !contains_special(e) {
        let val = expr_to_rational(e, n_name, k_name, resolve)?;
        if val.is_zero() {
            return Err(Error::domain("term is identically zero"));
        }
        *rational = rational.mul(&val.pow_i64(exp));
        return Ok(());
    }
    match e {
        Expr::Mul(a, b) => {
            collect_factors(a, exp, n_name, k_name, resolve, rational, specials)?;
            collect_factors(b, exp, n_name, k_name, resolve, rational, specials)
        }
        Expr::Div(a, b) => {
            collect_factors(a, exp, n_name, k_name, resolve, rational, specials)?;
            collect_factors(b, -exp, n_name, k_name, resolve, rational, specials)
        }
        Expr::Neg(a) => {
            *rational = rational.mul(&Nk::from_i64(-1).pow_i64(exp));
            collect_factors(a, exp, n_name, k_name, resolve, rational, specials)
        }
        Expr::Pow(a, b) => {
            if let Some(c) = const_integer(b) {
                collect_factors(a, exp * c, n_name, k_name, resolve, rational, specials)
            } else {
                // exponential factor: base must be free of n and k
                if contains_special(a) {
                    return Err(Error::unsupported("nested special factor in a power base"));
                }
                let base = expr_to_rational(a, n_name, k_name, resolve)?;
                if !base.is_polynomial() && base.den().degree() > 0 {
                    return Err(Error::unsupported("power base must be constant"));
                }
                if !is_constant_nk(&base) {
                    return Err(Error::unsupported(
                        "power base must not involve the running variables",
                    ));
                }
                if base.is_zero() {
                    return Err(Error::domain("zero base in an exponential factor"));
                }
                let arg = expr_to_rational(b, n_name, k_name, resolve)?;
                let lf = linear_form(arg, "power exponent")?;
                specials.push((Special::Power(base, lf), exp));
                Ok(())
            }
        }
        Expr::Factorial(a) => {
            let arg = expr_to_rational(a, n_name, k_name, resolve)?;
            specials.push((
                Special::Factorial(linear_form(arg, "factorial argument")?),
                exp,
            ));
            Ok(())
        }
        Expr::Binomial(top, bot) => {
            // binomial(t, b) contributes t!/(b! (t-b)!) generically
            let t = expr_to_rational(top, n_name, k_name, resolve)?;
            let b = expr_to_rational(bot, n_name, k_name, resolve)?;
            let tb = t.sub(&b);
            specials.push((Special::Factorial(linear_form(t, "binomial argument")?), exp));
            specials.push((Special::Factorial(linear_form(b, "binomial argument")?), -exp));
            specials.push((Special::Factorial(linear_form(tb, "binomial argument")?), -exp));
            Ok(())
        }
        Expr::Pochhammer(a, b) => {
            let av = expr_to_rational(a, n_name, k_name, resolve)?;
            let bv = expr_to_rational(b, n_name, k_name, resolve)?;
            specials.push((
                Special::Pochhammer(
                    linear_form(av, "pochhammer argument")?,
                    linear_form(bv, "pochhammer argument")?,
                ),
                exp,
            ));
            Ok(())
        }
        Expr::Add(..) | Expr::Sub(..) => Err(Error::unsupported(
            "sums containing factorial-type factors cannot be compiled to a single term",
        )),
        Expr::Int(_) | Expr::Var(_) => unreachable!("handled by the special-free branch"),
    }
}

fn is_constant_nk<K: Field>(f: &Nk<K>) -> bool {
    f.num().degree() <= 0
        && f.den().is_one()
        && f.num().coeff(0).num().degree() <= 0
        && f.num().coeff(0).den().is_one()
}

/// Gamma(base + steps) / Gamma(base) as a rational function.
fn gamma_ratio<K: Field>(base: &Nk<K>, steps: i64) -> Nk<K> {
    let mut acc = Nk::one();
    if steps >= 0 {
        for i in 0..steps {
            acc = acc.mul(&base.add(&Nk::from_i64(i)));
        }
    } else {
        for i in 1..=(-steps) {
            acc = acc.div(&base.sub(&Nk::from_i64(i)));
        }
    }
    acc
}

/// Compiles an expression into shift-quotient form. Arguments of
/// factorial, binomial and pochhammer must be integer-linear in the two
/// running variables; exponential bases must be constants or parameters.
pub fn compile<K: Field>(
    e: &Expr,
    n_name: &str,
    k_name: &str,
    resolve: Resolver<K>,
) -> Result<HyperTerm<K>> {
    let mut rational = Nk::one();
    let mut specials = Vec::new();
    collect_factors(e, 1, n_name, k_name, resolve, &mut rational, &mut specials)?;
    let mut u = shift_n(&rational, 1).div(&rational);
    let mut v = shift_k(&rational, 1).div(&rational);
    for (sp, exp) in &specials {
        let (fu, fv) = match sp {
            Special::Factorial(lf) => {
                let base = lf.value.add(&Nk::one());
                (gamma_ratio(&base, lf.n_coeff), gamma_ratio(&base, lf.k_coeff))
            }
            Special::Pochhammer(a, b) => {
                // (a)_b = Gamma(a+b)/Gamma(a)
                let ab = a.value.add(&b.value);
                let fu = gamma_ratio(&ab, a.n_coeff + b.n_coeff).div(&gamma_ratio(&a.value, a.n_coeff));
                let fv = gamma_ratio(&ab, a.k_coeff + b.k_coeff).div(&gamma_ratio(&a.value, a.k_coeff));
                (fu, fv)
            }
            Special::Power(z, lf) => (z.pow_i64(lf.n_coeff), z.pow_i64(lf.k_coeff)),
        };
        u = u.mul(&fu.pow_i64(*exp));
        v = v.mul(&fv.pow_i64(*exp));
    }
    let t = HyperTerm {
        u,
        v,
        source: Some(e.clone()),
    };
    debug_assert!(compatibility_check(&t));
    Ok(t)
}

// ---- Gosper's algorithm -------------------------------------------------

/// Gosper form (p, q, r): f = p(x+1)/p(x) * q(x)/r(x) with
/// gcd(q(x), r(x+i)) = 1 for every natural i.
#[derive(Clone, Debug)]
pub struct GosperForm<K: Field> {
    pub p: Poly<K>,
    pub q: Poly<K>,
    pub r: Poly<K>,
}

pub fn gosper_form<K: Field>(f: &RatFun<K>) -> Result<GosperForm<K>> {
    if f.is_zero() {
        return Err(Error::domain("gosper form of the zero function"));
    }
    let mut p = Poly::one();
    let mut q = f.num().clone();
    let mut r = f.den().clone();
    for i in shift_candidates(&q, &r) {
        if i == 0 {
            continue; // q, r coprime at shift zero already
        }
        let g = Poly::gcd(&q, &r.shift_int(i as i64));
        if g.degree() > 0 {
            q = q.exact_div(&g);
            r = r.exact_div(&g.shift_int(-(i as i64)));
            for l in 1..=i {
                p = p.mul(&g.shift_int(-(l as i64)));
            }
        }
    }
    Ok(GosperForm { p, q, r })
}

impl<K: Field> GosperForm<K> {
    /// The reconstructed quotient p(x+1)/p(x) * q/r.
    pub fn reconstruct(&self) -> RatFun<K> {
        RatFun::new(self.p.shift_int(1).mul(&self.q), self.p.mul(&self.r))
    }
}

/// Degree bound for the polynomial solution z of Gosper's equation
/// p = q*z(x+1) - r(x-1)*z(x); None when no degree is admissible.
pub fn gosper_degree_bound<K: Field>(gf: &GosperForm<K>) -> Option<i64> {
    degree_bound_parts(&gf.p, &gf.q, &gf.r.shift_int(-1))
}

/// Same bound with explicit p, q and r(x-1), reused by the parameterized
/// variant where p carries unknown coefficients and only its generic
/// degree is known.
fn degree_bound_parts<K: Field>(p: &Poly<K>, q: &Poly<K>, r_shift: &Poly<K>) -> Option<i64> {
    degree_bound_from_degs(p.degree(), q, r_shift)
}

fn degree_bound_from_degs<K: Field>(deg_p: isize, q: &Poly<K>, r_shift: &Poly<K>) -> Option<i64> {
    let diff = q.sub(r_shift);
    let deg_q = q.degree();
    let deg_diff = diff.degree();
    let mut candidates: Vec<i64> = Vec::new();
    let cap = deg_p as i64 - (deg_q.max(deg_diff + 1)) as i64 + 1;
    if cap >= 0 {
        candidates.push(cap);
    }
    if !diff.is_zero() && deg_q == deg_diff + 1 {
        // case split: d may also be -lc(q - r(x-1)) / lc(q)
        let ratio = diff.leading().div(&q.leading()).neg();
        if let Some(rr) = ratio.as_rat() {
            if let Some(d) = rat_to_i64(&rr) {
                if d >= 0 {
                    candidates.push(d);
                }
            }
        }
    }
    candidates.into_iter().max()
}

/// Gosper's algorithm on the shift quotient f(x) = H(x+1)/H(x): returns a
/// rational y with 1 = f(x) y(x+1) - y(x) (so that H = Delta(y H)), or
/// None when H is not hypergeometric-summable.
pub fn gosper<K: Field>(f: &RatFun<K>) -> Option<RatFun<K>> {
    if f.is_zero() {
        return None;
    }
    let gf = gosper_form(f).ok()?;
    let d = gosper_degree_bound(&gf)?;
    let r_shift = gf.r.shift_int(-1);
    // columns: q*(x+1)^j - r(x-1)*x^j for the coefficients of z
    let mut cols: Vec<Poly<K>> = Vec::new();
    for j in 0..=d as usize {
        let xj = Poly::monomial(K::one(), j);
        let xj_up = Poly::monomial(K::one(), j).taylor_shift(&K::one());
        cols.push(gf.q.mul(&xj_up).sub(&r_shift.mul(&xj)));
    }
    let nrows = cols
        .iter()
        .map(|c| c.degree() + 1)
        .max()
        .unwrap_or(0)
        .max(gf.p.degree() + 1) as usize;
    let matrix: Vec<Vec<K>> = (0..nrows)
        .map(|t| cols.iter().map(|c| c.coeff(t)).collect())
        .collect();
    let rhs: Vec<K> = (0..nrows).map(|t| gf.p.coeff(t)).collect();
    let sol = solve_dense(matrix, rhs)?;
    let z = Poly::from_coeffs(sol);
    // y = r(x-1) z(x) / p(x)
    Some(RatFun::new(r_shift.mul(&z), gf.p.clone()))
}

// ---- parameterized Gosper and Zeilberger --------------------------------

/// Simultaneous Gosper solve for a parameterized combination
/// sum_i p_i * ratio_i(k) * f0 where v is the k-shift quotient of f0 and
/// each ratio_i is rational in k. Returns the parameters (not all zero,
/// as polynomials in the coefficient variable) and the certificate ratio
/// R with sum_i p_i ratio_i = R(k+1) v - R(k).
pub fn gosper_parameterized<K: Field>(
    v: &Nk<K>,
    ratios: &[Nk<K>],
) -> Option<(Vec<Poly<K>>, Nk<K>)> {
    assert!(!ratios.is_empty());
    type C<K> = RatFun<K>;
    // common denominator D(k) of the ratios
    let mut dd: Poly<C<K>> = Poly::one();
    for t in ratios {
        dd = Poly::lcm(&dd, t.den());
    }
    let nums: Vec<Poly<C<K>>> = ratios
        .iter()
        .map(|t| t.num().mul(&dd.exact_div(t.den())))
        .collect();
    // w(k) = D(k) v_num / (D(k+1) v_den)
    let w = RatFun::new(dd.mul(v.num()), dd.shift_int(1).mul(v.den()));
    let gf = gosper_form(&w).ok()?;
    // c_i(k) = nums_i * p_w; the full Gosper p is sum p_i c_i
    let cs: Vec<Poly<C<K>>> = nums.iter().map(|nm| nm.mul(&gf.p)).collect();
    let r_shift = gf.r.shift_int(-1);
    let deg_c = cs.iter().map(|c| c.degree()).max().unwrap_or(-1);
    let d = degree_bound_from_degs(deg_c, &gf.q, &r_shift)?;
    let nz = d as usize + 1;
    let m = ratios.len();
    // homogeneous system in (z_0..z_d, p_0..p_{m-1})
    let mut cols: Vec<Poly<C<K>>> = Vec::with_capacity(nz + m);
    for j in 0..nz {
        let xj = Poly::monomial(C::<K>::one(), j);
        let xj_up = xj.taylor_shift(&C::<K>::one());
        cols.push(gf.q.mul(&xj_up).sub(&r_shift.mul(&xj)));
    }
    for c in &cs {
        cols.push(c.neg());
    }
    let nrows = cols.iter().map(|c| c.degree() + 1).max().unwrap_or(0) as usize;
    let matrix = Matrix::from_fn(nrows, nz + m, |t, j| cols[j].coeff(t));
    let kernel = matrix.nullspace();
    for vec in kernel {
        let params = &vec[nz..];
        if params.iter().all(|p| p.is_zero()) {
            continue;
        }
        let z: Poly<C<K>> = Poly::from_coeffs(
            vec[..nz]
                .iter()
                .map(|p| C::<K>::from_poly(p.clone()))
                .collect(),
        );
        // R = r(k-1) z(k) / (p_w(k) D(k))
        let cert = RatFun::new(r_shift.mul(&z), gf.p.mul(&dd));
        return Some((params.to_vec(), cert));
    }
    None
}

/// A telescoper P(n, S_n) with its certificate ratio R = g/f and order.
#[derive(Clone, Debug)]
pub struct TelescopingResult<K: Field> {
    pub telescoper: OreOp<K>,
    pub certificate: Nk<K>,
    pub order: usize,
}

/// Zeilberger's algorithm: the minimal-order telescoper with order at
/// most r_max, or None if none exists up to that order. Every returned
/// result has already passed the certificate check.
pub fn zeilberger<K: Field>(t: &HyperTerm<K>, r_max: usize) -> Option<TelescopingResult<K>> {
    debug_assert!(compatibility_check(t));
    let mut ratios: Vec<Nk<K>> = vec![Nk::one()];
    for r in 0..=r_max {
        if r > 0 {
            let last = ratios.last().unwrap();
            ratios.push(last.mul(&shift_n(&t.u, r as i64 - 1)));
        }
        if let Some((params, mut cert)) = gosper_parameterized(&t.v, &ratios) {
            let mut telescoper = OreOp::from_poly_coeffs(Gen::Shift, params);
            // fix the sign so the leading telescoper coefficient is positive
            if telescoper.leading().lead_sign() < 0 {
                telescoper = telescoper.scale(&RatFun::from_i64(-1));
                cert = cert.neg();
            }
            let order = telescoper.order().max(0) as usize;
            let result = TelescopingResult {
                telescoper,
                certificate: cert,
                order,
            };
            let report = crate::verify::check_telescoper_sum(
                &result.telescoper,
                &result.certificate,
                t,
            );
            assert!(report.ok, "telescoper failed its certificate check");
            return Some(result);
        }
    }
    None
}

// ---- Apagodu-Zeilberger order bound --------------------------------------

/// Order bound for the minimal telescoper of a proper hypergeometric
/// product, from the k-coefficients of its factorial-type factors:
/// max(sum of rising numerator steps + falling denominator steps,
///     sum of falling numerator steps + rising denominator steps).
pub fn az_order_bound(e: &Expr) -> Result<u32> {
    let mut tally = AzTally::default();
    collect_az::<crate::field::Rat>(e, 1, &mut tally)?;
    Ok((tally.a + tally.d).max(tally.b + tally.c) as u32)
}

#[derive(Default)]
struct AzTally {
    a: i64, // k-rising factorials in the numerator
    b: i64, // k-falling factorials in the numerator
    c: i64, // k-rising factorials in the denominator
    d: i64, // k-falling factorials in the denominator
}

impl AzTally {
    fn add(&mut self, k_coeff: i64, exp: i64) {
        if k_coeff == 0 || exp == 0 {
            return;
        }
        let count = k_coeff.abs() * exp.abs();
        match (k_coeff > 0, exp > 0) {
            (true, true) => self.a += count,
            (false, true) => self.b += count,
            (true, false) => self.c += count,
            (false, false) => self.d += count,
        }
    }
}

fn collect_az<K: Field>(e: &Expr, exp: i64, tally: &mut AzTally) -> Result<()> {
    if !contains_special(e) {
        // polynomial prefactor: must not contribute poles in k
        let val: Nk<K> = expr_to_rational(e, "n", "k", &no_params::<K>)?;
        if exp >= 0 && !val.is_polynomial() {
            return Err(Error::unsupported(
                "prefactor of a proper hypergeometric term must be polynomial",
            ));
        }
        if exp < 0 && val.num().degree() > 0 {
            return Err(Error::unsupported(
                "prefactor of a proper hypergeometric term must be polynomial",
            ));
        }
        return Ok(());
    }
    match e {
        Expr::Mul(x, y) => {
            collect_az::<K>(x, exp, tally)?;
            collect_az::<K>(y, exp, tally)
        }
        Expr::Div(x, y) => {
            collect_az::<K>(x, exp, tally)?;
            collect_az::<K>(y, -exp, tally)
        }
        Expr::Neg(x) => collect_az::<K>(x, exp, tally),
        Expr::Pow(x, y) => {
            if let Some(c) = const_integer(y) {
                collect_az::<K>(x, exp * c, tally)
            } else {
                // exponential factor z^(an+bk+c): no effect on the bound
                Ok(())
            }
        }
        Expr::Factorial(arg) => {
            let lf = linear_form(expr_to_rational::<K>(arg, "n", "k", &no_params::<K>)?, "factorial")?;
            tally.add(lf.k_coeff, exp);
            Ok(())
        }
        Expr::Binomial(top, bot) => {
            let t = expr_to_rational::<K>(top, "n", "k", &no_params::<K>)?;
            let b = expr_to_rational::<K>(bot, "n", "k", &no_params::<K>)?;
            let tb = t.sub(&b);
            tally.add(linear_form(t, "binomial")?.k_coeff, exp);
            tally.add(linear_form(b, "binomial")?.k_coeff, -exp);
            tally.add(linear_form(tb, "binomial")?.k_coeff, -exp);
            Ok(())
        }
        Expr::Pochhammer(a, b) => {
            // (a)_b = Gamma(a+b)/Gamma(a): numerator with k-coeff of a+b,
            // denominator with k-coeff of a
            let av = expr_to_rational::<K>(a, "n", "k", &no_params::<K>)?;
            let bv = expr_to_rational::<K>(b, "n", "k", &no_params::<K>)?;
            let ab = av.add(&bv);
            tally.add(linear_form(ab, "pochhammer")?.k_coeff, exp);
            tally.add(linear_form(av, "pochhammer")?.k_coeff, -exp);
            Ok(())
        }
        Expr::Add(..) | Expr::Sub(..) => Err(Error::unsupported(
            "proper hypergeometric form required (no sums of special factors)",
        )),
        Expr::Int(_) | Expr::Var(_) => unreachable!(),
    }
}

// ---- WZ pairs ------------------------------------------------------------

/// WZ certification: for f = summand/rhs, returns the rational R(n,k)
/// with f(n+1,k) - f(n,k) = g(n,k+1) - g(n,k) for g = R*f, or None when
/// Gosper fails on the adjusted term.
pub fn wz_pair<K: Field>(summand: &Expr, rhs: &Expr, resolve: Resolver<K>) -> Result<Option<Nk<K>>> {
    let quotient_expr = Expr::Div(Box::new(summand.clone()), Box::new(rhs.clone()));
    let t = compile(&quotient_expr, "n", "k", resolve)?;
    if !compatibility_check(&t) {
        return Err(Error::domain("incompatible shift quotients"));
    }
    let u_minus_1 = t.u.sub(&Nk::one());
    if u_minus_1.is_zero() {
        // f is independent of n; the zero certificate works
        return Ok(Some(Nk::zero()));
    }
    // shift quotient of fbar = f(n+1,k) - f(n,k) with respect to k
    let tilde_v = shift_k(&u_minus_1, 1).mul(&t.v).div(&u_minus_1);
    let y = match gosper(&tilde_v) {
        Some(y) => y,
        None => return Ok(None),
    };
    let r = y.mul(&u_minus_1);
    // f(n+1,k)/f - 1 = (R v)(k+1->) ... identity check: u - 1 = R(k+1) v - R(k)
    let residual = shift_k(&r, 1).mul(&t.v).sub(&r).sub(&u_minus_1);
    assert!(residual.is_zero(), "WZ identity failed to verify");
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    type Q = Rat;

    fn compile_q(src: &str) -> HyperTerm<Q> {
        compile(&Expr::parse(src).unwrap(), "n", "k", &no_params::<Q>).unwrap()
    }

    #[test]
    fn compile_binomial() {
        let t = compile_q("binomial(n, k)");
        // u = (n+1)/(n+1-k), v = (n-k)/(k+1)
        let n = nk_n::<Q>();
        let k = nk_k::<Q>();
        let one = Nk::<Q>::one();
        let u_expect = n.add(&one).div(&n.add(&one).sub(&k));
        let v_expect = n.sub(&k).div(&k.add(&one));
        assert_eq!(t.u, u_expect);
        assert_eq!(t.v, v_expect);
        assert!(compatibility_check(&t));
    }

    #[test]
    fn compile_alternating_square() {
        // (-1)^k binomial(2n, n+k)^2: v = ((n-k)/(n+k+1))^2 * (-1)
        let t = compile_q("(-1)^k*binomial(2*n, n + k)^2");
        let n = nk_n::<Q>();
        let k = nk_k::<Q>();
        let one = Nk::<Q>::one();
        let ratio = n.sub(&k).div(&n.add(&k).add(&one));
        let v_expect = ratio.mul(&ratio).neg();
        assert_eq!(t.v, v_expect);
        assert!(compatibility_check(&t));
    }

    #[test]
    fn compatibility_negative_control() {
        // u = n+1, v = n*k is not a consistent pair
        let n = nk_n::<Q>();
        let k = nk_k::<Q>();
        let t = HyperTerm::from_quotients(n.add(&Nk::one()), n.mul(&k));
        assert!(!compatibility_check(&t));
        let t = HyperTerm::<Q>::from_quotients(Nk::one(), Nk::one());
        assert!(compatibility_check(&t));
    }

    #[test]
    fn gosper_form_of_ratio_example() {
        // (k+2)/k has Gosper form p = k(k+1), q = r = 1
        let f = RatFun::<Q>::new(Poly::from_i64s(&[2, 1]), Poly::from_i64s(&[0, 1]));
        let gf = gosper_form(&f).unwrap();
        assert_eq!(gf.q, Poly::one());
        assert_eq!(gf.r, Poly::one());
        assert_eq!(gf.p, Poly::from_i64s(&[0, 1, 1]));
        assert_eq!(gf.reconstruct(), f);
        // GCD condition
        for i in shift_candidates(&gf.q, &gf.r) {
            assert!(Poly::gcd(&gf.q, &gf.r.shift_int(i as i64)).degree() <= 0);
        }
    }

    #[test]
    fn degree_bound_trivial_cases() {
        let gf = GosperForm::<Q> {
            p: Poly::one(),
            q: Poly::one(),
            r: Poly::one(),
        };
        assert_eq!(gosper_degree_bound(&gf), Some(1));
    }

    #[test]
    fn gosper_constant_term() {
        // H = 1: quotient 1, y = k works (Delta(k) = 1)
        let one = RatFun::<Q>::one();
        let y = gosper(&one).unwrap();
        // y(k+1)*1 - y(k) = 1
        assert_eq!(y.shift(1).sub(&y), RatFun::one());
    }

    #[test]
    fn gosper_harmonic_fails() {
        // H = 1/k: quotient k/(k+1), not summable
        let f = RatFun::<Q>::new(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[1, 1]));
        assert!(gosper(&f).is_none());
    }

    #[test]
    fn az_bound_examples() {
        assert_eq!(az_order_bound(&Expr::parse("binomial(n, k)").unwrap()).unwrap(), 1);
        assert_eq!(
            az_order_bound(&Expr::parse("binomial(n, k)^2*binomial(n + k, k)^2").unwrap()).unwrap(),
            4
        );
        assert_eq!(az_order_bound(&Expr::parse("k!").unwrap()).unwrap(), 1);
        assert!(az_order_bound(&Expr::parse("1/(n^2 + k^2)").unwrap()).is_err());
    }

    #[test]
    fn zeilberger_binomial_row_sum() {
        // sum_k binomial(n,k) = 2^n: telescoper S - 2
        let t = compile_q("binomial(n, k)");
        let res = zeilberger(&t, 6).unwrap();
        assert_eq!(res.order, 1);
        let p = res.telescoper.normalized();
        assert_eq!(p.coeff(0), RatFun::from_i64(-2));
        assert_eq!(p.coeff(1), RatFun::from_i64(1));
    }
}

/// Reinterprets a function of the outer variable only (the inner level
/// unused) as a univariate rational function.
pub fn project_outer<K: Field>(f: &Nk<K>) -> Option<RatFun<K>> {
    let flatten = |p: &Poly<RatFun<K>>| -> Option<Poly<K>> {
        let mut out = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.den().is_one() || c.num().degree() > 0 {
                return None;
            }
            out.push(c.num().coeff(0));
        }
        Some(Poly::from_coeffs(out))
    };
    Some(RatFun::new(flatten(f.num())?, flatten(f.den())?))
}
