//! Truncated power-series oracles.
//!
//! These expansions are the independent cross-checks for the telescoping
//! and closure code: diagonals and residues of bivariate rational
//! functions as explicit series, and application of differential
//! operators to truncated series. Everything is exact rational
//! arithmetic on finitely many coefficients.

use num_traits::Zero;

use crate::ct::Xy;
use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::ore::{Gen, OreOp};
use crate::poly::Poly;

/// Coefficient tables a[i][j] = [x^i y^j] for numerator and denominator
/// with cleared inner denominators.
fn poly_fraction_tables(f: &Xy) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let mut den_lcm: Poly<Rat> = Poly::one();
    for part in [f.num(), f.den()] {
        for c in part.coeffs() {
            den_lcm = Poly::lcm(&den_lcm, c.den());
        }
    }
    let table = |p: &Poly<crate::ratfun::RatFun<Rat>>| -> Vec<Vec<Rat>> {
        // index [x_power][y_power]
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (j, c) in p.coeffs().iter().enumerate() {
            let cleared = c.num().mul(&den_lcm.exact_div(c.den()));
            for (i, q) in cleared.coeffs().iter().enumerate() {
                while rows.len() <= i {
                    rows.push(Vec::new());
                }
                while rows[i].len() <= j {
                    rows[i].push(<Rat as Zero>::zero());
                }
                rows[i][j] = q.clone();
            }
        }
        rows
    };
    (table(f.num()), table(f.den()))
}

/// Power-series table of f at the origin up to total x- and y-order
/// `order` (inclusive); requires den(0,0) != 0.
pub fn expand_power_series(f: &Xy, order: usize) -> Result<Vec<Vec<Rat>>> {
    let (pnum, pden) = poly_fraction_tables(f);
    let at = |t: &Vec<Vec<Rat>>, i: usize, j: usize| -> Rat {
        t.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(<Rat as Zero>::zero)
    };
    let q00 = at(&pden, 0, 0);
    if Zero::is_zero(&q00) {
        return Err(Error::domain(
            "power-series expansion needs a denominator nonzero at the origin",
        ));
    }
    let mut s = vec![vec![<Rat as Zero>::zero(); order + 1]; order + 1];
    for i in 0..=order {
        for j in 0..=order {
            let mut acc = at(&pnum, i, j);
            for a in 0..=i {
                for b in 0..=j {
                    if a == i && b == j {
                        continue;
                    }
                    let q = at(&pden, i - a, j - b);
                    if !Zero::is_zero(&q) && !Zero::is_zero(&s[a][b]) {
                        acc -= s[a][b].clone() * q;
                    }
                }
            }
            s[i][j] = acc / q00.clone();
        }
    }
    Ok(s)
}

/// The diagonal sequence [x^t y^t] f for t = 0..order.
pub fn diagonal_series(f: &Xy, order: usize) -> Result<Vec<Rat>> {
    let table = expand_power_series(f, order)?;
    Ok((0..=order).map(|t| table[t][t].clone()).collect())
}

/// Truncated Laurent series in y: coefficients for exponents
/// lo, lo+1, ..., lo+coeffs.len()-1.
#[derive(Clone, Debug)]
struct Laurent {
    lo: i64,
    coeffs: Vec<Rat>,
}

impl Laurent {
    fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    fn coeff(&self, e: i64) -> Rat {
        if e < self.lo {
            return <Rat as Zero>::zero();
        }
        self.coeffs
            .get((e - self.lo) as usize)
            .cloned()
            .unwrap_or_else(<Rat as Zero>::zero)
    }

    fn trim(mut self, top: i64) -> Self {
        // drop exponents >= top and leading zeros
        while self.lo + (self.coeffs.len() as i64) > top {
            self.coeffs.pop();
        }
        while self.coeffs.first().map_or(false, |c| Zero::is_zero(c)) {
            self.coeffs.remove(0);
            self.lo += 1;
        }
        self
    }

    fn mul(&self, rhs: &Laurent, top: i64) -> Laurent {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::zero();
        }
        let lo = self.lo + rhs.lo;
        let len = ((top - lo).max(0) as usize).min(self.coeffs.len() + rhs.coeffs.len() - 1);
        let mut out = vec![<Rat as Zero>::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len && !Zero::is_zero(b) {
                    out[i + j] += a.clone() * b;
                }
            }
        }
        Laurent { lo, coeffs: out }.trim(top)
    }

    fn sub(&self, rhs: &Laurent) -> Laurent {
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        if self.coeffs.is_empty() {
            let mut out = rhs.clone();
            for c in out.coeffs.iter_mut() {
                *c = -c.clone();
            }
            return out;
        }
        let lo = self.lo.min(rhs.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(rhs.lo + rhs.coeffs.len() as i64);
        let mut out = vec![<Rat as Zero>::zero(); (hi - lo) as usize];
        for (i, c) in out.iter_mut().enumerate() {
            let e = lo + i as i64;
            *c = self.coeff(e) - rhs.coeff(e);
        }
        Laurent { lo, coeffs: out }
    }

    /// Inverse of y^v * u(y) with u(0) != 0, to `terms` coefficients.
    fn inverse(&self, terms: usize) -> Result<Laurent> {
        if self.coeffs.is_empty() || Zero::is_zero(&self.coeffs[0]) {
            return Err(Error::domain("Laurent inverse of zero"));
        }
        let u0 = self.coeffs[0].clone();
        let mut inv = vec![<Rat as Zero>::zero(); terms];
        inv[0] = u0.recip();
        for t in 1..terms {
            let mut acc = <Rat as Zero>::zero();
            for j in 1..=t {
                let uj = self.coeffs.get(j).cloned().unwrap_or_else(<Rat as Zero>::zero);
                if !Zero::is_zero(&uj) {
                    acc += uj * inv[t - j].clone();
                }
            }
            inv[t] = -acc / u0.clone();
        }
        Ok(Laurent {
            lo: -self.lo,
            coeffs: inv,
        })
    }
}

/// Residue sequence res_y of the x-adic expansion of f: for each power of
/// x the coefficient of y^(-1). The expansion lives in C((y))((x))-style
/// series: the denominator's lowest x-coefficient is inverted as a
/// Laurent series in y.
pub fn residue_series(f: &Xy, order: usize) -> Result<Vec<Rat>> {
    let (pnum, pden) = poly_fraction_tables(f);
    // reorganize by x-power: q_m(y), p_m(y)
    let max_y = |t: &Vec<Vec<Rat>>| t.iter().map(|r| r.len()).max().unwrap_or(0);
    let spread = max_y(&pnum).max(max_y(&pden)) as i64 + 2;
    let top = (order as i64 + 3) * spread;
    let by_x = |t: &Vec<Vec<Rat>>| -> Vec<Laurent> {
        t.iter()
            .map(|row| {
                Laurent {
                    lo: 0,
                    coeffs: row.clone(),
                }
                .trim(top)
            })
            .collect()
    };
    let p = by_x(&pnum);
    let q = by_x(&pden);
    let q0 = q.first().cloned().unwrap_or_else(Laurent::zero);
    if q0.coeffs.is_empty() {
        return Err(Error::domain(
            "residue expansion needs a nonzero lowest x-coefficient in the denominator",
        ));
    }
    let q0_inv = q0.inverse(top.max(4) as usize)?;
    let mut fx: Vec<Laurent> = Vec::with_capacity(order + 1);
    let mut out = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = p.get(m).cloned().unwrap_or_else(Laurent::zero);
        for j in 1..=m {
            if let Some(qj) = q.get(j) {
                if !qj.coeffs.is_empty() {
                    acc = acc.sub(&qj.mul(&fx[m - j], top));
                }
            }
        }
        let fm = acc.mul(&q0_inv, top);
        out.push(fm.coeff(-1));
        fx.push(fm);
    }
    Ok(out)
}

/// Applies a differential operator (coefficients cleared to polynomials)
/// to a truncated power series; the result is valid up to
/// len - order - max coefficient degree.
pub fn apply_diff_op(op: &OreOp<Rat>, series: &[Rat]) -> Vec<Rat> {
    assert_eq!(op.gen(), Gen::Der);
    let coeffs = op.cleared_coeffs();
    let ord = op.order().max(0) as usize;
    let maxdeg = coeffs.iter().map(|p| p.degree().max(0)).max().unwrap_or(0) as usize;
    if series.len() < ord + maxdeg + 1 {
        return Vec::new();
    }
    let valid = series.len() - ord - maxdeg;
    let mut result = vec![<Rat as Zero>::zero(); valid];
    // derivative tables
    let mut deriv: Vec<Vec<Rat>> = vec![series.to_vec()];
    for i in 1..=ord {
        let prev = &deriv[i - 1];
        let mut next = Vec::with_capacity(prev.len().saturating_sub(1));
        for (m, c) in prev.iter().enumerate().skip(1) {
            next.push(c.clone() * crate::field::rat(m as i64));
        }
        deriv.push(next);
    }
    for (i, c) in coeffs.iter().enumerate() {
        for (j, pc) in c.coeffs().iter().enumerate() {
            if Field::is_zero(pc) {
                continue;
            }
            for t in 0..valid {
                if t >= j {
                    if let Some(v) = deriv[i].get(t - j) {
                        result[t] += pc.clone() * v;
                    }
                }
            }
        }
    }
    result
}

/// Applies a shift operator (cleared coefficients) to a sequence; entry t
/// is the relation evaluated at index t.
pub fn apply_shift_op(op: &OreOp<Rat>, seq: &[Rat], offset: i64) -> Vec<Rat> {
    assert_eq!(op.gen(), Gen::Shift);
    let coeffs = op.cleared_coeffs();
    let ord = op.order().max(0) as usize;
    if seq.len() < ord + 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(seq.len() - ord);
    for t in 0..seq.len() - ord {
        let n = crate::field::rat(offset + t as i64);
        let mut acc = <Rat as Zero>::zero();
        for (i, c) in coeffs.iter().enumerate() {
            acc += c.eval(&n) * seq[t + i].clone();
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct::{xy_x, xy_y};
    use crate::field::rat;

    fn one() -> Xy {
        Xy::one()
    }

    #[test]
    fn geometric_diagonal() {
        // diag 1/(1 - x y) = 1/(1 - x): all ones
        let f = one().div(&one().sub(&xy_x().mul(&xy_y())));
        let d = diagonal_series(&f, 8).unwrap();
        assert!(d.iter().all(|c| *c == rat(1)));
    }

    #[test]
    fn residue_of_simple_pole() {
        // 1/y has residue sequence (1, 0, 0, ...)
        let f = one().div(&xy_y());
        let r = residue_series(&f, 5).unwrap();
        assert_eq!(r[0], rat(1));
        assert!(r[1..].iter().all(|c| Zero::is_zero(c)));
        // y/(y^2 - x): expansion sum_m x^m y^(-1-2m), residue = (1, 0, 0, ...)
        let f = xy_y().div(&xy_y().mul(&xy_y()).sub(&xy_x()));
        let r = residue_series(&f, 6).unwrap();
        assert_eq!(r[0], rat(1));
        assert!(r[1..].iter().all(|c| Zero::is_zero(c)));
    }

    #[test]
    fn diff_op_kills_its_series() {
        // (1-4x) D - 2 annihilates (1-4x)^(-1/2): coefficients binom(2n,n)
        let op = OreOp::new(
            Gen::Der,
            vec![
                crate::ratfun::RatFun::from_i64(-2),
                crate::ratfun::RatFun::from_poly(Poly::from_i64s(&[1, -4])),
            ],
        );
        let mut series = Vec::new();
        let mut c = rat(1);
        for n in 0..20i64 {
            series.push(c.clone());
            // binom(2n+2, n+1) = binom(2n, n) * 2(2n+1)/(n+1)
            c = c * rat(2) * rat(2 * n + 1) / rat(n + 1);
        }
        let residual = apply_diff_op(&op, &series);
        assert!(!residual.is_empty());
        assert!(residual.iter().all(|c| Zero::is_zero(c)));
    }
}
