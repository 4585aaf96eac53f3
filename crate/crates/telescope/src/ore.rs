//! Univariate Ore operators: linear recurrence and differential operators
//! with rational-function coefficients.
//!
//! An operator is sum coeffs[i] * G^i where G is either the shift S
//! (S r(n) = r(n+1) S) or the derivation D (D r(x) = r(x) D + r'(x)).
//! Closure properties (sum, product) are found by linear algebra over the
//! coefficient field, looping over the candidate order.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Shift,
    Der,
}

/// Coefficients live in the fraction field K(x); coeffs[i] multiplies G^i.
#[derive(Clone, PartialEq)]
pub struct OreOp<K: Field> {
    gen: Gen,
    coeffs: Vec<RatFun<K>>,
}

impl<K: Field> OreOp<K> {
    pub fn new(gen: Gen, mut coeffs: Vec<RatFun<K>>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        OreOp { gen, coeffs }
    }

    pub fn zero(gen: Gen) -> Self {
        OreOp { gen, coeffs: Vec::new() }
    }

    pub fn one(gen: Gen) -> Self {
        OreOp::new(gen, vec![RatFun::one()])
    }

    /// c * G^i
    pub fn monomial(gen: Gen, c: RatFun<K>, i: usize) -> Self {
        let mut coeffs = vec![RatFun::zero(); i + 1];
        coeffs[i] = c;
        OreOp::new(gen, coeffs)
    }

    pub fn from_poly_coeffs(gen: Gen, coeffs: Vec<Poly<K>>) -> Self {
        OreOp::new(gen, coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn gen(&self) -> Gen {
        self.gen
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order = degree in the generator; -1 for the zero operator.
    pub fn order(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> RatFun<K> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeffs(&self) -> &[RatFun<K>] {
        &self.coeffs
    }

    pub fn leading(&self) -> RatFun<K> {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.gen, rhs.gen, "mixed operator generators");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OreOp::new(
            self.gen,
            (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&RatFun::from_i64(-1)))
    }

    pub fn scale(&self, c: &RatFun<K>) -> Self {
        OreOp::new(self.gen, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Noncommutative product respecting the commutation rule of the
    /// generator.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.gen, rhs.gen, "mixed operator generators");
        if self.is_zero() || rhs.is_zero() {
            return OreOp::zero(self.gen);
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        match self.gen {
            Gen::Shift => {
                // S^i b(n) = b(n+i) S^i
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out[i + j] = out[i + j].add(&a.mul(&b.shift(i as i64)));
                    }
                }
            }
            Gen::Der => {
                // D^i b = sum_t C(i,t) b^(t) D^(i-t)
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let mut bt = b.clone();
                        let mut binom = RatFun::<K>::one();
                        for t in 0..=i {
                            if t > 0 {
                                bt = bt.der();
                                binom = binom
                                    .mul(&RatFun::from_i64((i - t + 1) as i64))
                                    .div(&RatFun::from_i64(t as i64));
                            }
                            let target = i - t + j;
                            out[target] = out[target].add(&a.mul(&binom).mul(&bt));
                        }
                    }
                }
            }
        }
        OreOp::new(self.gen, out)
    }

    /// Remainder of right division: self = q * rhs + rem with
    /// ord(rem) < ord(rhs).
    pub fn reduce(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::domain("right division by the zero operator"));
        }
        assert_eq!(self.gen, rhs.gen, "mixed operator generators");
        let mut rem = self.clone();
        while rem.order() >= rhs.order() && !rem.is_zero() {
            let d = (rem.order() - rhs.order()) as usize;
            let lead_rhs = match self.gen {
                Gen::Shift => rhs.leading().shift(d as i64),
                Gen::Der => rhs.leading(),
            };
            let c = rem.leading().div(&lead_rhs);
            let mono = OreOp::monomial(self.gen, c, d);
            rem = rem.sub(&mono.mul(rhs));
        }
        Ok(rem)
    }

    /// Makes the coefficients polynomial with no common content: returns
    /// the cleared coefficient list.
    pub fn cleared_coeffs(&self) -> Vec<Poly<K>> {
        crate::linalg::normalize_vector(&self.coeffs)
    }

    /// Scalar-free normal form used for comparisons up to a constant:
    /// cleared polynomial coefficients with the leading one sign-positive.
    pub fn normalized(&self) -> Self {
        let mut coeffs = self.cleared_coeffs();
        if coeffs.last().map_or(false, |c| c.leading().lead_sign() < 0) {
            coeffs = coeffs.iter().map(|c| c.neg()).collect();
        }
        OreOp::from_poly_coeffs(self.gen, coeffs)
    }

    /// Applies a shift operator to a sequence of exact values indexed from
    /// `offset`; returns the values of (op . seq)(n) for every n where all
    /// needed entries and coefficient evaluations exist.
    pub fn apply_to_values(&self, values: &[Rat], offset: i64) -> Vec<(i64, Option<Rat>)>
    where
        K: Field,
    {
        assert_eq!(self.gen, Gen::Shift);
        let ord = self.order().max(0) as usize;
        let mut out = Vec::new();
        if values.len() < ord + 1 {
            return out;
        }
        for idx in 0..=values.len() - ord - 1 {
            let n = offset + idx as i64;
            let mut acc = Some(<Rat as Field>::zero());
            for (i, c) in self.coeffs.iter().enumerate() {
                let cv = c
                    .map_coeffs(|q| q.as_rat().expect("rational coefficients"))
                    .eval(&crate::field::rat(n));
                match (acc, cv) {
                    (Some(a), Some(cv)) => {
                        acc = Some(a + cv * values[idx + i].clone());
                    }
                    _ => {
                        acc = None;
                        break;
                    }
                }
            }
            out.push((n, acc));
        }
        out
    }

    pub fn display<'a>(&'a self, var: &'a str, gen_name: &'a str) -> OreOpDisplay<'a, K> {
        OreOpDisplay {
            op: self,
            var,
            gen_name,
        }
    }
}

pub struct OreOpDisplay<'a, K: Field> {
    op: &'a OreOp<K>,
    var: &'a str,
    gen_name: &'a str,
}

impl<K: Field> fmt::Display for OreOpDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.op.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.lead_sign() < 0 {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let cs = format!("{}", mag.display(self.var));
            if i == 0 {
                write!(f, "{}", cs)?;
            } else {
                if cs != "1" {
                    write!(f, "{}*", cs)?;
                }
                if i == 1 {
                    write!(f, "{}", self.gen_name)?;
                } else {
                    write!(f, "{}^{}", self.gen_name, i)?;
                }
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for OreOp<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen_name = match self.gen {
            Gen::Shift => "S",
            Gen::Der => "D",
        };
        write!(f, "{}", self.display("x", gen_name))
    }
}

/// Representation of G^i modulo a fixed operator, as a coefficient vector
/// over the basis 1, G, ..., G^(ord-1) of the quotient module.
struct CompanionSteps<K: Field> {
    op: OreOp<K>,
}

impl<K: Field> CompanionSteps<K> {
    fn new(op: &OreOp<K>) -> Self {
        CompanionSteps { op: op.clone() }
    }

    fn dim(&self) -> usize {
        self.op.order().max(0) as usize
    }

    fn initial(&self) -> Vec<RatFun<K>> {
        let mut v = vec![RatFun::zero(); self.dim()];
        if !v.is_empty() {
            v[0] = RatFun::one();
        }
        v
    }

    /// rep of G * (element with the given rep).
    fn step(&self, rep: &[RatFun<K>]) -> Vec<RatFun<K>> {
        let dim = self.dim();
        let mut out = vec![RatFun::zero(); dim];
        match self.op.gen() {
            Gen::Shift => {
                // G * sum r_j G^j = sum sigma(r_j) G^(j+1)
                for j in 0..dim {
                    let r = rep[j].shift(1);
                    if j + 1 < dim {
                        out[j + 1] = out[j + 1].add(&r);
                    } else {
                        // G^dim = -sum coeffs_j / lc * G^j
                        let lc = self.op.leading();
                        for t in 0..dim {
                            let red = self.op.coeff(t).div(&lc).neg();
                            out[t] = out[t].add(&r.mul(&red));
                        }
                    }
                }
            }
            Gen::Der => {
                // G * sum r_j G^j = sum (r_j' G^j + r_j G^(j+1))
                for j in 0..dim {
                    out[j] = out[j].add(&rep[j].der());
                    if j + 1 < dim {
                        out[j + 1] = out[j + 1].add(&rep[j]);
                    } else {
                        let lc = self.op.leading();
                        for t in 0..dim {
                            let red = self.op.coeff(t).div(&lc).neg();
                            out[t] = out[t].add(&rep[j].mul(&red));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Least common left multiple: the lowest-order operator that is a left
/// multiple of both inputs; annihilates every linear combination of
/// solutions of the two operators.
pub fn lclm<K: Field>(a: &OreOp<K>, b: &OreOp<K>) -> OreOp<K> {
    assert_eq!(a.gen(), b.gen(), "mixed operator generators");
    assert!(!a.is_zero() && !b.is_zero());
    let ca = CompanionSteps::new(a);
    let cb = CompanionSteps::new(b);
    let da = ca.dim();
    let db = cb.dim();
    let mut reps_a = vec![ca.initial()];
    let mut reps_b = vec![cb.initial()];
    for m in 0..=(da + db) {
        while reps_a.len() <= m {
            let last = reps_a.last().unwrap();
            reps_a.push(ca.step(last));
        }
        while reps_b.len() <= m {
            let last = reps_b.last().unwrap();
            reps_b.push(cb.step(last));
        }
        // look for c_0..c_m with sum c_i [repA_i | repB_i] = 0
        let matrix = Matrix::from_fn(da + db, m + 1, |row, i| {
            if row < da {
                reps_a[i][row].clone()
            } else {
                reps_b[i][row - da].clone()
            }
        });
        let kernel = matrix.nullspace();
        if let Some(v) = kernel.first() {
            return OreOp::from_poly_coeffs(a.gen(), v.clone());
        }
    }
    unreachable!("lclm exists at order <= ord(a) + ord(b)");
}

/// Annihilator of any sum f + g of solutions; identical to the least
/// common left multiple.
pub fn annihilator_sum<K: Field>(a: &OreOp<K>, b: &OreOp<K>) -> OreOp<K> {
    lclm(a, b)
}

/// Annihilator of any product f * g of solutions of a and b, found by the
/// linear-algebra ansatz on the tensor basis, with the candidate order
/// raised until a dependence appears (at the latest at ord(a)*ord(b)).
pub fn annihilator_product<K: Field>(a: &OreOp<K>, b: &OreOp<K>) -> OreOp<K> {
    assert_eq!(a.gen(), b.gen(), "mixed operator generators");
    assert!(!a.is_zero() && !b.is_zero());
    let gen = a.gen();
    let da = a.order().max(0) as usize;
    let db = b.order().max(0) as usize;
    let dim = da * db;
    if dim == 0 {
        // one factor is order 0: solutions are zero, any nonzero operator works
        return OreOp::one(gen);
    }
    // rep of h^(u) (or h(n+u)) on the basis f-deriv (x) g-deriv
    let mut reps: Vec<Vec<RatFun<K>>> = Vec::new();
    let mut current: Vec<Vec<RatFun<K>>> = vec![vec![RatFun::zero(); db]; da];
    current[0][0] = RatFun::one();
    let flat = |grid: &Vec<Vec<RatFun<K>>>| -> Vec<RatFun<K>> {
        grid.iter().flat_map(|r| r.iter().cloned()).collect()
    };
    reps.push(flat(&current));
    for m in 1..=dim {
        current = product_step(a, b, &current);
        reps.push(flat(&current));
        let matrix = Matrix::from_fn(dim, m + 1, |row, i| reps[i][row].clone());
        let kernel = matrix.nullspace();
        if let Some(v) = kernel.first() {
            return OreOp::from_poly_coeffs(gen, v.clone());
        }
    }
    unreachable!("product annihilator exists at order <= ord(a) * ord(b)");
}

/// One application of the generator to sum c_(i,j) f^(i) g^(j).
fn product_step<K: Field>(
    a: &OreOp<K>,
    b: &OreOp<K>,
    grid: &[Vec<RatFun<K>>],
) -> Vec<Vec<RatFun<K>>> {
    let da = a.order() as usize;
    let db = b.order() as usize;
    let mut out = vec![vec![RatFun::<K>::zero(); db]; da];
    let reduce_a: Vec<RatFun<K>> = (0..da).map(|t| a.coeff(t).div(&a.leading()).neg()).collect();
    let reduce_b: Vec<RatFun<K>> = (0..db).map(|t| b.coeff(t).div(&b.leading()).neg()).collect();
    match a.gen() {
        Gen::Shift => {
            // h(n+1): bump both indices with sigma on the coefficients;
            // an index reaching the order is rewritten by the recurrence
            // taken at base n
            for i in 0..da {
                for j in 0..db {
                    let c = grid[i][j].shift(1);
                    if c.is_zero() {
                        continue;
                    }
                    let fi: Vec<(usize, RatFun<K>)> = if i + 1 < da {
                        vec![(i + 1, RatFun::one())]
                    } else {
                        reduce_a.iter().cloned().enumerate().collect()
                    };
                    let gj: Vec<(usize, RatFun<K>)> = if j + 1 < db {
                        vec![(j + 1, RatFun::one())]
                    } else {
                        reduce_b.iter().cloned().enumerate().collect()
                    };
                    for (ti, rf) in &fi {
                        for (tj, rg) in &gj {
                            out[*ti][*tj] = out[*ti][*tj].add(&c.mul(rf).mul(rg));
                        }
                    }
                }
            }
        }
        Gen::Der => {
            // h' = sum c' f^(i) g^(j) + c f^(i+1) g^(j) + c f^(i) g^(j+1)
            for i in 0..da {
                for j in 0..db {
                    let c = &grid[i][j];
                    if c.is_zero() {
                        continue;
                    }
                    out[i][j] = out[i][j].add(&c.der());
                    if i + 1 < da {
                        out[i + 1][j] = out[i + 1][j].add(c);
                    } else {
                        for (t, r) in reduce_a.iter().enumerate() {
                            out[t][j] = out[t][j].add(&c.mul(r));
                        }
                    }
                    if j + 1 < db {
                        out[i][j + 1] = out[i][j + 1].add(c);
                    } else {
                        for (t, r) in reduce_b.iter().enumerate() {
                            out[i][t] = out[i][t].add(&c.mul(r));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Recurrence extracted from a differential operator with polynomial
/// coefficients, valid for indices n >= valid_from.
#[derive(Clone, Debug)]
pub struct RecurrenceFromOde<K: Field> {
    pub rec: OreOp<K>,
    pub valid_from: i64,
}

/// Converts sum p_(i,j) x^j D^i into the recurrence
/// sum p_(i,j) (n-j+1)_i a_(n-j+i) = 0 on Taylor coefficients, normalized
/// so the lowest shift present is S^0.
pub fn ode_to_rec<K: Field>(op: &OreOp<K>) -> Result<RecurrenceFromOde<K>> {
    if op.gen() != Gen::Der {
        return Err(Error::domain("ode_to_rec expects a differential operator"));
    }
    if op.order() <= 0 {
        return Err(Error::domain(
            "ode_to_rec expects an operator of positive order",
        ));
    }
    let cleared = op.cleared_coeffs();
    let d = cleared.iter().map(|p| p.degree()).max().unwrap_or(0).max(0);
    let r = op.order();
    // shift offsets e = i - j range over [-d, r]
    let var_n: RatFun<K> = RatFun::var();
    let mut acc: Vec<RatFun<K>> = vec![RatFun::zero(); (r + d + 1) as usize];
    for (i, p) in cleared.iter().enumerate() {
        for (j, pij) in p.coeffs().iter().enumerate() {
            if pij.is_zero() {
                continue;
            }
            // coefficient of a_(n+i-j), re-indexed by m = n - d so that
            // the lowest subscript is a_m: contributes at S^(d+i-j) with
            // the Pochhammer (m+d-j+1)_i
            let slot = (d as usize + i) - j;
            let base = var_n.add(&RatFun::from_i64(d as i64 - j as i64 + 1));
            let mut poch = RatFun::one();
            for t in 0..i {
                poch = poch.mul(&base.add(&RatFun::from_i64(t as i64)));
            }
            acc[slot] = acc[slot].add(&poch.mul(&RatFun::constant(pij.clone())));
        }
    }
    let mut rec = OreOp::new(Gen::Shift, acc);
    // drop any trailing zero shifts so the constant term is nonzero
    let mut low = 0usize;
    while low <= rec.order() as usize && rec.coeff(low).is_zero() {
        low += 1;
    }
    if low > 0 && !rec.is_zero() {
        let shifted: Vec<RatFun<K>> = (low..=rec.order() as usize)
            .map(|i| rec.coeff(i).shift(-(low as i64)))
            .collect();
        rec = OreOp::new(Gen::Shift, shifted);
    }
    Ok(RecurrenceFromOde {
        rec: rec.normalized(),
        valid_from: d as i64,
    })
}

/// A P-recursive sequence: annihilating operator plus enough initial
/// values to continue past every singularity of the leading coefficient.
#[derive(Clone, Debug)]
pub struct AnnihilatedSeries {
    pub op: OreOp<Rat>,
    pub initial: Vec<Rat>,
}

impl AnnihilatedSeries {
    pub fn new(op: OreOp<Rat>, initial: Vec<Rat>) -> Self {
        AnnihilatedSeries { op, initial }
    }

    /// First `count` terms of the unique solution extending the initial
    /// values. Fails with the offending index if the leading coefficient
    /// vanishes where no initial value is supplied.
    pub fn unroll(&self, count: usize) -> Result<Vec<Rat>> {
        let ord = self.op.order();
        if ord < 0 {
            return Err(Error::domain("zero operator"));
        }
        let ord = ord as usize;
        if self.initial.len() < ord {
            return Err(Error::domain(format!(
                "needs at least {} initial values, got {}",
                ord,
                self.initial.len()
            )));
        }
        let coeff_at = |i: usize, n: i64| -> Option<Rat> {
            self.op
                .coeff(i)
                .map_coeffs(|q| q.as_rat().expect("rational coefficients"))
                .eval(&crate::field::rat(n))
        };
        let mut values = self.initial.clone();
        while values.len() < count {
            let m = (values.len() - ord) as i64;
            let lead = coeff_at(ord, m);
            match lead {
                Some(l) if !Field::is_zero(&l) => {
                    let mut acc = <Rat as Field>::zero();
                    for i in 0..ord {
                        let c = coeff_at(i, m).ok_or(Error::SingularPoint { index: m })?;
                        acc += c * values[m as usize + i].clone();
                    }
                    values.push(-acc / l);
                }
                _ => return Err(Error::SingularPoint { index: m }),
            }
        }
        values.truncate(count);
        Ok(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    type Q = Rat;

    fn qn(coeffs: &[i64]) -> RatFun<Q> {
        RatFun::from_poly(Poly::from_i64s(coeffs))
    }

    fn c(v: i64) -> RatFun<Q> {
        RatFun::from_i64(v)
    }

    #[test]
    fn commutation_rules() {
        // D*x = x*D + 1
        let d = OreOp::monomial(Gen::Der, c(1), 1);
        let x = OreOp::monomial(Gen::Der, qn(&[0, 1]), 0);
        let prod = d.mul(&x);
        assert_eq!(prod.coeff(0), c(1));
        assert_eq!(prod.coeff(1), qn(&[0, 1]));
        // S*n = (n+1)*S
        let s = OreOp::monomial(Gen::Shift, c(1), 1);
        let n = OreOp::monomial(Gen::Shift, qn(&[0, 1]), 0);
        let prod = s.mul(&n);
        assert!(prod.coeff(0).is_zero());
        assert_eq!(prod.coeff(1), qn(&[1, 1]));
    }

    #[test]
    fn constant_coefficient_product() {
        // (S-1)(S-2) = S^2 - 3S + 2
        let a = OreOp::new(Gen::Shift, vec![c(-1), c(1)]);
        let b = OreOp::new(Gen::Shift, vec![c(-2), c(1)]);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[c(2), c(-3), c(1)]);
    }

    #[test]
    fn reduce_examples() {
        let a = OreOp::new(Gen::Shift, vec![c(-1), c(1)]);
        let b = OreOp::new(Gen::Shift, vec![c(-2), c(1)]);
        let prod = a.mul(&b);
        assert!(prod.reduce(&b).unwrap().is_zero());
        // S^2 mod (S-1) = 1
        let s2 = OreOp::monomial(Gen::Shift, c(1), 2);
        let m = OreOp::new(Gen::Shift, vec![c(-1), c(1)]);
        let rem = s2.reduce(&m).unwrap();
        assert_eq!(rem.coeffs(), &[c(1)]);
        // D^2 mod D = 0
        let d2 = OreOp::monomial(Gen::Der, c(1), 2);
        let d = OreOp::monomial(Gen::Der, c(1), 1);
        assert!(d2.reduce(&d).unwrap().is_zero());
    }

    #[test]
    fn lclm_shift_exponentials() {
        // (S-2, S-3) -> order-2 operator annihilating c1*2^n + c2*3^n
        let a = OreOp::new(Gen::Shift, vec![c(-2), c(1)]);
        let b = OreOp::new(Gen::Shift, vec![c(-3), c(1)]);
        let l = lclm(&a, &b);
        assert_eq!(l.order(), 2);
        assert!(l.reduce(&a).unwrap().is_zero());
        assert!(l.reduce(&b).unwrap().is_zero());
        // check on the sequences 2^n + 3^n
        let seq: Vec<Rat> = (0..10)
            .map(|n| rat(2i64.pow(n as u32) + 3i64.pow(n as u32)))
            .collect();
        for (_, v) in l.apply_to_values(&seq, 0) {
            assert_eq!(v, Some(rat(0)));
        }
        // idempotent case
        let same = lclm(&a, &a);
        assert_eq!(same.normalized().coeffs(), a.normalized().coeffs());
    }

    #[test]
    fn product_of_exponentials() {
        // solutions 2^n and 3^n multiply to 6^n: S - 6
        let a = OreOp::new(Gen::Shift, vec![c(-2), c(1)]);
        let b = OreOp::new(Gen::Shift, vec![c(-3), c(1)]);
        let p = annihilator_product(&a, &b);
        assert_eq!(p.order(), 1);
        let seq: Vec<Rat> = (0..8).map(|n| rat(6i64.pow(n as u32))).collect();
        for (_, v) in p.apply_to_values(&seq, 0) {
            assert_eq!(v, Some(rat(0)));
        }
    }

    #[test]
    fn ode_to_rec_exponential() {
        // D - 1 annihilates e^x: (n+1) a_(n+1) - a_n = 0
        let op = OreOp::new(Gen::Der, vec![c(-1), c(1)]);
        let rec = ode_to_rec(&op).unwrap();
        assert_eq!(rec.valid_from, 0);
        let r = rec.rec;
        assert_eq!(r.order(), 1);
        // a_(n+1)(n+1) = a_n up to overall sign
        let unrolled = AnnihilatedSeries::new(r, vec![rat(1)]).unroll(5).unwrap();
        assert_eq!(
            unrolled,
            vec![
                rat(1),
                rat(1),
                crate::field::ratio(1, 2),
                crate::field::ratio(1, 6),
                crate::field::ratio(1, 24)
            ]
        );
    }

    #[test]
    fn ode_to_rec_central_binomial() {
        // 2 - (1-4x) D, i.e. coefficients (2 - D + 4xD): (n+1)a_(n+1) = (4n+2)a_n
        let op = OreOp::new(Gen::Der, vec![c(2), qn(&[-1, 4])]);
        let rec = ode_to_rec(&op).unwrap();
        let vals = AnnihilatedSeries::new(rec.rec, vec![rat(1)]).unroll(5).unwrap();
        assert_eq!(vals, vec![rat(1), rat(2), rat(6), rat(20), rat(70)]);
    }

    #[test]
    fn ode_to_rec_rejects_order_zero() {
        let op = OreOp::new(Gen::Der, vec![qn(&[-1, 1])]);
        assert!(ode_to_rec(&op).is_err());
    }

    #[test]
    fn unroll_reports_singularities() {
        // (n-2) a_(n+1) - a_n: leading coefficient vanishes at n = 2
        let op = OreOp::new(Gen::Shift, vec![c(-1), qn(&[-2, 1])]);
        let err = AnnihilatedSeries::new(op, vec![rat(1)]).unroll(6).unwrap_err();
        assert_eq!(err, Error::SingularPoint { index: 2 });
    }
}
