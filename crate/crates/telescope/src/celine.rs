//! Sister Celine's method: k-free recurrences for bivariate
//! hypergeometric terms by linear algebra, and their translation into
//! recurrences for the definite sum.
//!
//! The ansatz sum a_(i,j)(n) f(n+i, k+j) = 0 is divided by f, rewritten
//! through the shift quotients, and solved by coefficient comparison in
//! k. Summing over k then yields an operator for S(n) = sum_k f(n,k),
//! valid under natural boundaries. When the relation has Delta_k as a
//! left factor the plain column sums collapse to zero; multiplying by k
//! and renormalizing recovers a nonzero k-free part (Wegschaider's
//! lemma).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::hyper::{compatibility_check, shift_k, shift_n, HyperTerm, Nk};
use crate::linalg::Matrix;
use crate::ore::{Gen, OreOp};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// A recurrence sum a_(i,j) f(n+i, k+j) = 0 with coefficients free of k
/// (polynomials in n).
#[derive(Clone, Debug)]
pub struct KFreeRecurrence {
    pub order_n: usize,
    pub order_k: usize,
    pub coeffs: BTreeMap<(usize, usize), Poly<Rat>>,
}

impl KFreeRecurrence {
    /// The exact check: the relation, divided by f(n,k) and rewritten via
    /// the shift quotients, must simplify to the zero rational function.
    pub fn residual(&self, t: &HyperTerm<Rat>) -> Nk<Rat> {
        let ratios = shift_ratios(t, self.order_n, self.order_k);
        let mut acc = Nk::zero();
        for (&(i, j), c) in &self.coeffs {
            let coeff: Nk<Rat> = RatFun::constant(RatFun::from_poly(c.clone()));
            acc = acc.add(&coeff.mul(&ratios[i][j]));
        }
        acc
    }
}

/// ratios[i][j] = f(n+i, k+j) / f(n, k) expressed via u and v.
fn shift_ratios<K: Field>(t: &HyperTerm<K>, r: usize, s: usize) -> Vec<Vec<Nk<K>>> {
    let mut rows: Vec<Vec<Nk<K>>> = Vec::with_capacity(r + 1);
    // first row: products of v
    let mut row0: Vec<Nk<K>> = Vec::with_capacity(s + 1);
    row0.push(Nk::one());
    for j in 0..s {
        let last = row0.last().unwrap().clone();
        row0.push(last.mul(&shift_k(&t.v, j as i64)));
    }
    rows.push(row0);
    for i in 0..r {
        let u_i = shift_n(&t.u, i as i64);
        let prev = &rows[i];
        let mut row: Vec<Nk<K>> = Vec::with_capacity(s + 1);
        for (j, p) in prev.iter().enumerate() {
            row.push(p.mul(&shift_k(&u_i, j as i64)));
        }
        rows.push(row);
    }
    rows
}

/// Searches for k-free recurrences of order (r, s): one per kernel basis
/// vector of the coefficient-comparison matrix; empty when none exists.
pub fn kfree_recurrence(t: &HyperTerm<Rat>, r: usize, s: usize) -> Vec<KFreeRecurrence> {
    debug_assert!(compatibility_check(t));
    let ratios = shift_ratios(t, r, s);
    let flat: Vec<&Nk<Rat>> = ratios.iter().flat_map(|row| row.iter()).collect();
    // common denominator in k over Q(n)
    let mut den: Poly<RatFun<Rat>> = Poly::one();
    for f in &flat {
        den = Poly::lcm(&den, f.den());
    }
    let nums: Vec<Poly<RatFun<Rat>>> = flat
        .iter()
        .map(|f| f.num().mul(&den.exact_div(f.den())))
        .collect();
    let nrows = nums.iter().map(|p| p.degree() + 1).max().unwrap_or(0).max(1) as usize;
    let matrix = Matrix::from_fn(nrows, nums.len(), |t_row, col| nums[col].coeff(t_row));
    let kernel = matrix.nullspace();
    kernel
        .into_iter()
        .map(|vec| {
            // trailing-coefficient sign normalization
            let flip = vec
                .iter()
                .rev()
                .find(|p| !p.is_zero())
                .map_or(false, |p| p.leading().lead_sign() < 0);
            let mut coeffs = BTreeMap::new();
            for (idx, p) in vec.into_iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let i = idx / (s + 1);
                let j = idx % (s + 1);
                coeffs.insert((i, j), if flip { p.neg() } else { p });
            }
            KFreeRecurrence {
                order_n: r,
                order_k: s,
                coeffs,
            }
        })
        .collect()
}

/// Operators in (n, k, S_n, Delta_k) kept in the left-normal form
/// sum_m Delta_k^m . D_m(n, k, S_n); each D_m is a vector over S_n-powers
/// of polynomials in k with coefficients in Q(n).
type SnOp = Vec<Poly<RatFun<Rat>>>;

#[derive(Clone, Debug)]
struct DeltaNormalForm {
    levels: Vec<SnOp>,
}

fn snop_is_zero(op: &SnOp) -> bool {
    op.iter().all(|c| c.is_zero())
}

fn snop_add(a: &SnOp, b: &SnOp) -> SnOp {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Poly::zero);
            let y = b.get(i).cloned().unwrap_or_else(Poly::zero);
            x.add(&y)
        })
        .collect()
}

fn snop_scale(a: &SnOp, c: &Poly<RatFun<Rat>>) -> SnOp {
    a.iter().map(|p| p.mul(c)).collect()
}

impl DeltaNormalForm {
    /// Converts a k-free recurrence via S_k^j = (1 + Delta_k)^j.
    fn from_kfree(rec: &KFreeRecurrence) -> Self {
        let r = rec.order_n;
        let s = rec.order_k;
        let mut levels: Vec<SnOp> = vec![vec![Poly::zero(); r + 1]; s + 1];
        let mut binom = vec![vec![0i64; s + 2]; s + 2];
        binom[0][0] = 1;
        for j in 1..=s + 1 {
            binom[j][0] = 1;
            for m in 1..=j {
                binom[j][m] = binom[j - 1][m - 1] + binom[j - 1][m];
            }
        }
        for (&(i, j), c) in &rec.coeffs {
            let c_lift: Poly<RatFun<Rat>> = Poly::constant(RatFun::from_poly(c.clone()));
            for m in 0..=j {
                let scaled = c_lift.scale(&RatFun::from_i64(binom[j][m]));
                levels[m][i] = levels[m][i].add(&scaled);
            }
        }
        DeltaNormalForm { levels }
    }

    fn head(&self) -> &SnOp {
        &self.levels[0]
    }

    /// Left-multiplies by k, using k Delta^m = Delta^m (k - m) - m Delta^(m-1).
    fn lift_once(&self) -> Self {
        let k_poly: Poly<RatFun<Rat>> = Poly::var();
        let mut levels: Vec<SnOp> = vec![Vec::new(); self.levels.len()];
        for (m, d) in self.levels.iter().enumerate() {
            if snop_is_zero(d) {
                continue;
            }
            let k_minus_m = k_poly.add(&Poly::constant(RatFun::from_i64(-(m as i64))));
            levels[m] = snop_add(&levels[m], &snop_scale(d, &k_minus_m));
            if m > 0 {
                let lower = snop_scale(d, &Poly::constant(RatFun::from_i64(-(m as i64))));
                levels[m - 1] = snop_add(&levels[m - 1], &lower);
            }
        }
        DeltaNormalForm { levels }
    }
}

/// The k-free part of a relation, lifting with Wegschaider's trick when
/// the plain part vanishes; None if nothing nonzero can be extracted.
fn extract_sum_operator(rec: &KFreeRecurrence) -> Option<OreOp<Rat>> {
    let mut form = DeltaNormalForm::from_kfree(rec);
    for _ in 0..=rec.order_k + 1 {
        let head = form.head();
        if !snop_is_zero(head) {
            if head.iter().any(|c| c.degree() > 0) {
                return None; // k-dependent head: not a valid telescoped part
            }
            let coeffs: Vec<RatFun<Rat>> = head.iter().map(|c| c.coeff(0)).collect();
            let op = OreOp::new(Gen::Shift, coeffs);
            return Some(normalize_trailing(&op));
        }
        form = form.lift_once();
    }
    None
}

/// Clears content and fixes the sign of the highest-shift coefficient.
fn normalize_trailing(op: &OreOp<Rat>) -> OreOp<Rat> {
    let mut coeffs = op.cleared_coeffs();
    if coeffs.last().map_or(false, |c| c.leading().lead_sign() < 0) {
        coeffs = coeffs.iter().map(|c| c.neg()).collect();
    }
    OreOp::from_poly_coeffs(op.gen(), coeffs)
}

/// A recurrence for S(n) = sum_k f(n,k), assuming natural boundaries
/// (the summand vanishes outside finitely many k). Column sums give the
/// operator directly; a vanishing sum triggers the Wegschaider lift.
/// None when no k-free recurrence exists at orders (r, s).
pub fn celine_sum_recurrence(t: &HyperTerm<Rat>, r: usize, s: usize) -> Option<OreOp<Rat>> {
    let recs = kfree_recurrence(t, r, s);
    let mut lifted_fallback: Option<OreOp<Rat>> = None;
    for rec in &recs {
        // plain column sums: coefficient of S^i is sum_j a_(i,j)
        let mut sums: Vec<RatFun<Rat>> = vec![RatFun::zero(); r + 1];
        for (&(i, _), c) in &rec.coeffs {
            sums[i] = sums[i].add(&RatFun::from_poly(c.clone()));
        }
        let op = OreOp::new(Gen::Shift, sums);
        if !op.is_zero() {
            return Some(normalize_trailing(&op));
        }
        if lifted_fallback.is_none() {
            lifted_fallback = extract_sum_operator(rec);
        }
    }
    lifted_fallback
}

/// Wegschaider lifting of a single relation: the k-free operator
/// P(n, S_n) whose existence the lemma guarantees; for a relation whose
/// column sums are already nonzero this is just that sum.
pub fn wegschaider_lift(rec: &KFreeRecurrence) -> Result<OreOp<Rat>> {
    extract_sum_operator(rec)
        .ok_or_else(|| Error::no_solution("no nonzero k-free part could be extracted"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::hyper::{compile, no_params};

    fn term(src: &str) -> HyperTerm<Rat> {
        compile(&Expr::parse(src).unwrap(), "n", "k", &no_params::<Rat>).unwrap()
    }

    fn qp(v: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(v)
    }

    #[test]
    fn pascal_via_celine() {
        let t = term("binomial(n, k)");
        let recs = kfree_recurrence(&t, 1, 1);
        assert_eq!(recs.len(), 1);
        let rec = &recs[0];
        // -f(n,k) - f(n,k+1) + f(n+1,k+1) = 0
        assert_eq!(rec.coeffs.get(&(0, 0)), Some(&qp(&[-1])));
        assert_eq!(rec.coeffs.get(&(0, 1)), Some(&qp(&[-1])));
        assert_eq!(rec.coeffs.get(&(1, 0)), None);
        assert_eq!(rec.coeffs.get(&(1, 1)), Some(&qp(&[1])));
        assert!(rec.residual(&t).is_zero());
        // sum recurrence: -2 S(n) + S(n+1)
        let op = celine_sum_recurrence(&t, 1, 1).unwrap();
        assert_eq!(op.coeff(0), RatFun::from_i64(-2));
        assert_eq!(op.coeff(1), RatFun::from_i64(1));
    }

    #[test]
    fn binomial_square_at_1_1_is_empty() {
        let t = term("binomial(n, k)^2");
        assert!(kfree_recurrence(&t, 1, 1).is_empty());
        assert!(celine_sum_recurrence(&t, 1, 1).is_none());
    }

    #[test]
    fn binomial_square_at_2_2() {
        let t = term("binomial(n, k)^2");
        let op = celine_sum_recurrence(&t, 2, 2).unwrap();
        // (-6 - 4n) S(n+1) + (2 + n) S(n+2)
        assert!(op.coeff(0).is_zero());
        assert_eq!(op.coeff(1), RatFun::from_poly(qp(&[-6, -4])));
        assert_eq!(op.coeff(2), RatFun::from_poly(qp(&[2, 1])));
    }

    #[test]
    fn wegschaider_lift_on_shifted_pascal() {
        // f(n,k) - f(n+1,k+1) - f(n,k+2) + f(n+1,k+2) = 0 for binomial(n,k):
        // column sums vanish, yet the lift recovers a part proportional
        // to S - 2.
        let t = term("binomial(n, k)");
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), qp(&[1]));
        coeffs.insert((1, 1), qp(&[-1]));
        coeffs.insert((0, 2), qp(&[-1]));
        coeffs.insert((1, 2), qp(&[1]));
        let rec = KFreeRecurrence {
            order_n: 1,
            order_k: 2,
            coeffs,
        };
        assert!(rec.residual(&t).is_zero());
        let mut sums = vec![RatFun::<Rat>::zero(); 2];
        for (&(i, _), c) in &rec.coeffs {
            sums[i] = sums[i].add(&RatFun::from_poly(c.clone()));
        }
        assert!(sums.iter().all(|s| s.is_zero()));
        let op = wegschaider_lift(&rec).unwrap();
        let norm = op.normalized();
        assert_eq!(norm.coeff(0), RatFun::from_i64(-2));
        assert_eq!(norm.coeff(1), RatFun::from_i64(1));
    }

    #[test]
    fn pascal_relation_is_unchanged_by_lift() {
        let t = term("binomial(n, k)");
        let rec = kfree_recurrence(&t, 1, 1).remove(0);
        let op = wegschaider_lift(&rec).unwrap();
        assert_eq!(op.coeff(0), RatFun::from_i64(-2));
        assert_eq!(op.coeff(1), RatFun::from_i64(1));
    }
}
