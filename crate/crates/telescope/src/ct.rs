//! Creative telescoping for bivariate rational functions, differential
//! case: find P(x, D_x) and g with P . f = D_y(g).
//!
//! Two routes are implemented: reduction-based telescoping (apply Hermite
//! reduction with respect to y to f, D_x f, D_x^2 f, ... and look for a
//! linear dependence among the remainders) and the Apagodu-Zeilberger
//! ansatz (undetermined coefficients against a fixed denominator power).
//! Residues and diagonals of rational power series reduce to the same
//! telescopers.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::Matrix;
use crate::ore::{Gen, OreOp};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::ratint;

/// Rational functions of (x, y): y is the outer (integration) variable,
/// x the inner (free) one.
pub type Xy = RatFun<RatFun<Rat>>;

/// The variable x as an element of Xy.
pub fn xy_x() -> Xy {
    RatFun::constant(RatFun::var())
}

/// The variable y as an element of Xy.
pub fn xy_y() -> Xy {
    RatFun::var()
}

/// Partial derivative with respect to the inner variable x.
pub fn der_x(f: &Xy) -> Xy {
    let dnum = poly_der_x(f.num());
    let dden = poly_der_x(f.den());
    RatFun::new(
        dnum.mul(f.den()).sub(&f.num().mul(&dden)),
        f.den().mul(f.den()),
    )
}

fn poly_der_x(p: &Poly<RatFun<Rat>>) -> Poly<RatFun<Rat>> {
    p.map_coeffs(|c| c.der())
}

/// Partial derivative with respect to the outer variable y.
pub fn der_y(f: &Xy) -> Xy {
    f.der()
}

/// One step of the reduction: D_x^i f = D_y(g_i) + h_i with h_i proper
/// over a squarefree denominator in y.
#[derive(Clone, Debug)]
pub struct ReductionRow {
    pub index: usize,
    pub g: Xy,
    pub h: Xy,
}

/// The first `count` reduction rows of f.
pub fn hermite_reduction_rows(f: &Xy, count: usize) -> Vec<ReductionRow> {
    let mut rows = Vec::with_capacity(count);
    let mut current = f.clone();
    for index in 0..count {
        if index > 0 {
            current = der_x(&current);
        }
        let hr = ratint::hermite_reduce(&current);
        rows.push(ReductionRow {
            index,
            g: hr.g,
            h: hr.h,
        });
    }
    rows
}

/// A differential telescoper with its certificate: telescoper . f = D_y(certificate).
#[derive(Clone, Debug)]
pub struct DiffTelescopingResult {
    pub telescoper: OreOp<Rat>,
    pub certificate: Xy,
}

/// Reduction-based telescoping. The returned telescoper has minimal
/// order; its order never exceeds the y-degree of the squarefree part of
/// the denominator of f. The certificate identity is re-checked exactly
/// before returning.
pub fn hermite_telescoper(f: &Xy) -> Result<DiffTelescopingResult> {
    if f.is_zero() {
        return Err(Error::domain("telescoper of the zero function"));
    }
    let mut rows: Vec<ReductionRow> = Vec::new();
    let mut current = f.clone();
    loop {
        let index = rows.len();
        if index > 0 {
            current = der_x(&current);
        }
        let hr = ratint::hermite_reduce(&current);
        rows.push(ReductionRow {
            index,
            g: hr.g,
            h: hr.h,
        });
        // dependence among the remainders h_0 .. h_index over Q(x)
        if let Some(coeffs) = remainder_dependence(&rows) {
            let telescoper = OreOp::from_poly_coeffs(Gen::Der, coeffs.clone());
            let mut cert = Xy::zero();
            for (j, c) in coeffs.iter().enumerate() {
                let cc: Xy = RatFun::constant(RatFun::from_poly(c.clone()));
                cert = cert.add(&cc.mul(&rows[j].g));
            }
            let result = DiffTelescopingResult {
                telescoper,
                certificate: cert,
            };
            let report =
                crate::verify::check_telescoper_integral(&result.telescoper, &result.certificate, f);
            assert!(report.ok, "telescoper failed its certificate check");
            return Ok(result);
        }
    }
}

/// Q(x)-linear dependence among the remainders, or None while they stay
/// independent.
fn remainder_dependence(rows: &[ReductionRow]) -> Option<Vec<Poly<Rat>>> {
    // common squarefree denominator
    let mut den: Poly<RatFun<Rat>> = Poly::one();
    for r in rows {
        den = Poly::lcm(&den, r.h.den());
    }
    let nums: Vec<Poly<RatFun<Rat>>> = rows
        .iter()
        .map(|r| r.h.num().mul(&den.exact_div(r.h.den())))
        .collect();
    let nrows = nums.iter().map(|p| p.degree() + 1).max().unwrap_or(0).max(1) as usize;
    let matrix = Matrix::from_fn(nrows, rows.len(), |t, j| nums[j].coeff(t));
    let kernel = matrix.nullspace();
    kernel.into_iter().next()
}

/// Apagodu-Zeilberger telescoping for a proper bivariate rational
/// function: ansatz certificate Z(y)/q^r against telescoper order r,
/// solvable at the latest when r = deg_y(q) - 1.
pub fn az_telescoper(f: &Xy) -> Result<DiffTelescopingResult> {
    if f.is_zero() {
        return Err(Error::domain("telescoper of the zero function"));
    }
    if f.num().degree() >= f.den().degree() {
        return Err(Error::domain(
            "ansatz telescoping expects deg_y(num) < deg_y(den)",
        ));
    }
    let p = f.num().clone();
    let q = f.den().clone();
    let degq = q.degree();
    let degp = p.degree();
    let q_dx = poly_der_x(&q);
    let q_dy = q.derivative();
    for r in 0..=(degq.max(1) as usize) {
        // numerators N_i of D_x^i f over q^(i+1)
        let mut numerators: Vec<Poly<RatFun<Rat>>> = vec![p.clone()];
        for i in 0..r {
            let n_i = &numerators[i];
            let next = poly_der_x(n_i)
                .mul(&q)
                .sub(&n_i.mul(&q_dx).scale(&RatFun::from_i64(i as i64 + 1)));
            numerators.push(next);
        }
        // common denominator q^(r+1): A_i = N_i q^(r-i)
        let columns_c: Vec<Poly<RatFun<Rat>>> = numerators
            .iter()
            .enumerate()
            .map(|(i, n_i)| n_i.mul(&q.pow((r - i) as u32)))
            .collect();
        // certificate ansatz Z/q^r with deg Z = s
        let s = (r as isize - 1) * degq + degp + 1;
        let nz = if s < 0 { 0 } else { s as usize + 1 };
        // D_y(Z/q^r) = (Z' q - r Z q_y) / q^(r+1)
        let columns_b: Vec<Poly<RatFun<Rat>>> = (0..nz)
            .map(|t| {
                let yt = Poly::monomial(RatFun::one(), t);
                yt.derivative()
                    .mul(&q)
                    .sub(&yt.mul(&q_dy).scale(&RatFun::from_i64(r as i64)))
                    .neg()
            })
            .collect();
        let all: Vec<&Poly<RatFun<Rat>>> = columns_c.iter().chain(columns_b.iter()).collect();
        let nrows = all.iter().map(|p| p.degree() + 1).max().unwrap_or(0).max(1) as usize;
        let matrix = Matrix::from_fn(nrows, all.len(), |t, j| all[j].coeff(t));
        for vec in matrix.nullspace() {
            let c_part = &vec[..r + 1];
            if c_part.iter().all(|c| c.is_zero()) {
                continue;
            }
            let telescoper = OreOp::from_poly_coeffs(Gen::Der, c_part.to_vec());
            let z: Poly<RatFun<Rat>> = Poly::from_coeffs(
                vec[r + 1..]
                    .iter()
                    .map(|p| RatFun::from_poly(p.clone()))
                    .collect(),
            );
            let cert = RatFun::new(z, q.pow(r as u32));
            let result = DiffTelescopingResult {
                telescoper,
                certificate: cert,
            };
            let report = crate::verify::check_telescoper_integral(
                &result.telescoper,
                &result.certificate,
                f,
            );
            assert!(report.ok, "telescoper failed its certificate check");
            return Ok(result);
        }
    }
    Err(Error::no_solution(
        "no telescoper found within the guaranteed order bound",
    ))
}

/// An annihilator of res_y of any bilateral-series expansion of f: the
/// telescoper itself, since residues kill derivatives with respect to y.
pub fn residue_annihilator(f: &Xy) -> Result<OreOp<Rat>> {
    Ok(hermite_telescoper(f)?.telescoper)
}

/// An annihilator of diag f, via diag a(x,y) = res_y a(y, x/y)/y.
pub fn diagonal_annihilator(f: &Xy) -> Result<OreOp<Rat>> {
    let g = diagonal_substitution(f)?;
    residue_annihilator(&g)
}

/// The rational function a(y, x/y)/y, with powers of y cleared.
pub fn diagonal_substitution(f: &Xy) -> Result<Xy> {
    if f.is_zero() {
        return Err(Error::domain("diagonal of the zero function"));
    }
    let (num, num_shift) = substitute_poly(f.num());
    let (den, den_shift) = substitute_poly(f.den());
    if den.is_zero() {
        return Err(Error::domain("degenerate diagonal substitution"));
    }
    // a(y, x/y) = num * y^(den_shift - num_shift); the residue formula
    // divides by one more power of y
    let mut num = num;
    let mut den = den;
    let pow = den_shift - num_shift - 1;
    if pow >= 0 {
        num = num.mul(&Poly::monomial(RatFun::one(), pow as usize));
    } else {
        den = den.mul(&Poly::monomial(RatFun::one(), (-pow) as usize));
    }
    Ok(RatFun::new(num, den))
}

/// Substitutes (x, y) -> (y, x/y) in a polynomial in y over Q(x) and
/// clears negative powers of y: a monomial c x^a y^b maps to
/// c x^b y^(a-b); returns (poly, shift) with the true value
/// poly * y^(-shift).
fn substitute_poly(p: &Poly<RatFun<Rat>>) -> (Poly<RatFun<Rat>>, i64) {
    // collect (a, b, coeff) monomials of p with rational coefficients
    let mut monomials: Vec<(i64, i64, Rat)> = Vec::new();
    let mut x_den_lcm: Poly<Rat> = Poly::one();
    for c in p.coeffs() {
        x_den_lcm = Poly::lcm(&x_den_lcm, c.den());
    }
    for (b, c) in p.coeffs().iter().enumerate() {
        let cleared = c.num().mul(&x_den_lcm.exact_div(c.den()));
        for (a, q) in cleared.coeffs().iter().enumerate() {
            if !Field::is_zero(q) {
                monomials.push((a as i64, b as i64, q.clone()));
            }
        }
    }
    // x^a y^b -> x^b y^(a - b); shift all y powers up by max(b - a)
    let shift = monomials.iter().map(|&(a, b, _)| b - a).max().unwrap_or(0).max(0);
    let y_max = monomials
        .iter()
        .map(|&(a, b, _)| a - b + shift)
        .max()
        .unwrap_or(0);
    let mut out: Vec<Poly<Rat>> = vec![Poly::zero(); y_max as usize + 1];
    for (a, b, c) in monomials {
        let y_pow = (a - b + shift) as usize;
        let x_pow = b as usize;
        out[y_pow] = out[y_pow].add(&Poly::monomial(c, x_pow));
    }
    (
        Poly::from_coeffs(out.into_iter().map(RatFun::from_poly).collect()),
        shift,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Xy {
        Xy::one()
    }

    #[test]
    fn reduction_rows_satisfy_identity() {
        // f = 1/(x y^3 + y + 1)
        let x = xy_x();
        let y = xy_y();
        let f = one().div(&x.mul(&y.pow_i64(3)).add(&y).add(&one()));
        let rows = hermite_reduction_rows(&f, 3);
        let mut current = f.clone();
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                current = der_x(&current);
            }
            let residual = current.sub(&der_y(&row.g)).sub(&row.h);
            assert!(residual.is_zero(), "row {} fails", i);
            // h proper with squarefree denominator in y
            if !row.h.is_zero() {
                assert!(row.h.num().degree() < row.h.den().degree());
                let d = row.h.den();
                assert!(Poly::gcd(d, &d.derivative()).degree() <= 0);
            }
        }
    }

    #[test]
    fn cubic_example_telescoper() {
        // telescoper of 1/(x y^3 + y + 1) is 6 + 2(27x+1) D + x(27x+4) D^2
        let x = xy_x();
        let y = xy_y();
        let f = one().div(&x.mul(&y.pow_i64(3)).add(&y).add(&one()));
        let res = hermite_telescoper(&f).unwrap();
        assert_eq!(res.telescoper.order(), 2);
        let c = res.telescoper.normalized();
        let expect = OreOp::from_poly_coeffs(
            Gen::Der,
            vec![
                Poly::from_i64s(&[6]),
                Poly::from_i64s(&[2, 54]),
                Poly::from_i64s(&[0, 4, 27]),
            ],
        );
        assert_eq!(c.coeffs(), expect.normalized().coeffs());
        // h_1 = 3(y-3)/((27x+4)(x y^3+y+1))
        let rows = hermite_reduction_rows(&f, 2);
        let num_h1 = rows[1].h.num();
        let den_h1 = rows[1].h.den();
        let three = RatFun::from_i64(3);
        let scale27 = RatFun::from_poly(Poly::from_i64s(&[4, 27]));
        let expect_h1 = RatFun::new(
            Poly::from_coeffs(vec![three.mul(&RatFun::from_i64(-3)).div(&scale27), three.div(&scale27)]),
            x.mul(&y.pow_i64(3)).add(&y).add(&one()).num().clone(),
        );
        assert_eq!(RatFun::new(num_h1.clone(), den_h1.clone()), expect_h1);
    }

    #[test]
    fn az_matches_hermite_on_cubic() {
        let x = xy_x();
        let y = xy_y();
        let f = one().div(&x.mul(&y.pow_i64(3)).add(&y).add(&one()));
        let hermite = hermite_telescoper(&f).unwrap();
        let az = az_telescoper(&f).unwrap();
        assert_eq!(
            az.telescoper.normalized().coeffs(),
            hermite.telescoper.normalized().coeffs()
        );
    }

    #[test]
    fn constant_in_x_gives_dx() {
        // f = 1/(1+y): D_x annihilates it with certificate 0
        let y = xy_y();
        let f = one().div(&y.add(&one()));
        let res = hermite_telescoper(&f).unwrap();
        assert_eq!(res.telescoper.order(), 1);
        assert!(res.telescoper.coeff(0).is_zero());
        let az = az_telescoper(&f).unwrap();
        assert_eq!(az.telescoper.order(), 1);
    }

    #[test]
    fn symmetric_pole_order_one() {
        // f = 1/(x+y): D_x f = D_y f, telescoper of order 1
        let x = xy_x();
        let y = xy_y();
        let f = one().div(&x.add(&y));
        let res = hermite_telescoper(&f).unwrap();
        assert_eq!(res.telescoper.order(), 1);
    }

    #[test]
    fn order_bound_squarefree_part() {
        // denominator (x y^2 + 1)(y + x)^2: squarefree part has y-degree 3
        let x = xy_x();
        let y = xy_y();
        let den = x
            .mul(&y.pow_i64(2))
            .add(&one())
            .mul(&y.add(&x).pow_i64(2));
        let f = one().div(&den);
        let res = hermite_telescoper(&f).unwrap();
        assert!(res.telescoper.order() <= 3);
    }

    #[test]
    fn diagonal_substitution_example() {
        // diag of 1/(1 - x y) is 1/(1 - x): substitution gives
        // res_y of 1/(y - x) after clearing
        let x = xy_x();
        let y = xy_y();
        let f = one().div(&one().sub(&x.mul(&y)));
        let g = diagonal_substitution(&f).unwrap();
        // 1/y * 1/(1 - y * x/y) = 1/(y (1 - x)) ... as a reduced fraction
        let expect = one().div(&y.mul(&one().sub(&x)));
        assert_eq!(g, expect);
    }
}
