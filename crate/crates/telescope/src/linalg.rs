//! Exact linear algebra over fraction fields of polynomial rings.
//!
//! Entries are rational functions in one distinguished variable over a
//! coefficient field K (so Q(n), Q(x), Q(m)(n), ... depending on K).
//! Rows are cleared of denominators and the elimination runs fraction-free
//! on the polynomial numerators (Bareiss), which keeps every intermediate
//! entry a true minor of the input and avoids rational-function gcds in
//! the inner loop.

use crate::field::Field;
use crate::poly::Poly;
use crate::ratfun::RatFun;

#[derive(Clone, Debug)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RatFun<K>>>,
}

impl<K: Field> Matrix<K> {
    pub fn from_rows(entries: Vec<Vec<RatFun<K>>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        for r in &entries {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatFun<K>) -> Self {
        Matrix {
            rows,
            cols,
            entries: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFun<K> {
        &self.entries[i][j]
    }

    /// Matrix * vector over the fraction field.
    pub fn apply(&self, v: &[RatFun<K>]) -> Vec<RatFun<K>> {
        assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| {
                let mut acc = RatFun::zero();
                for (a, x) in row.iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Same, for a vector of cleared polynomial entries.
    pub fn apply_poly(&self, v: &[Poly<K>]) -> Vec<RatFun<K>> {
        let vv: Vec<RatFun<K>> = v.iter().map(|p| RatFun::from_poly(p.clone())).collect();
        self.apply(&vv)
    }

    fn cleared_rows(&self) -> Vec<Vec<Poly<K>>> {
        self.entries
            .iter()
            .map(|row| {
                let mut den = Poly::one();
                for e in row {
                    den = Poly::lcm(&den, e.den());
                }
                let mut out: Vec<Poly<K>> = row
                    .iter()
                    .map(|e| e.num().mul(&den.exact_div(e.den())))
                    .collect();
                // strip the polynomial content of the row
                let mut content = Poly::zero();
                for p in &out {
                    content = Poly::gcd(&content, p);
                    if content.is_constant() && !content.is_zero() {
                        break;
                    }
                }
                if content.degree() > 0 {
                    out = out.iter().map(|p| p.exact_div(&content)).collect();
                }
                out
            })
            .collect()
    }

    /// A basis of the right kernel. Each vector is cleared of denominators
    /// and of polynomial content, with the first nonzero entry normalized
    /// to a positive leading sign.
    ///
    /// When the entries have rational leaf coefficients the kernel is
    /// computed by modular evaluation and interpolation (Cramer minors per
    /// evaluation point, CRT across word primes) and verified exactly;
    /// otherwise a fraction-free Bareiss elimination runs directly on the
    /// tower.
    pub fn nullspace(&self) -> Vec<Vec<Poly<K>>> {
        let work = self.cleared_rows();
        if let Some(basis) = self.try_modular_nullspace(&work) {
            return basis;
        }
        self.bareiss_nullspace(work)
    }

    fn try_modular_nullspace(&self, work: &[Vec<Poly<K>>]) -> Option<Vec<Vec<Poly<K>>>> {
        // only when every coefficient is a plain rational
        let mut rows: Vec<Vec<Poly<crate::field::Rat>>> = Vec::with_capacity(work.len());
        for row in work {
            let mut out = Vec::with_capacity(row.len());
            for p in row {
                let mut coeffs = Vec::with_capacity(p.coeffs().len());
                for c in p.coeffs() {
                    coeffs.push(c.as_rat()?);
                }
                out.push(Poly::from_coeffs(coeffs));
            }
            rows.push(out);
        }
        let kernel = crate::modlinalg::nullspace_rational(&rows, self.cols);
        // exact verification against the original matrix
        let lifted: Vec<Vec<Poly<K>>> = kernel
            .iter()
            .map(|v| {
                v.iter()
                    .map(|p| p.map_coeffs(|c| K::from_rat(c)))
                    .collect()
            })
            .collect();
        for v in &lifted {
            for r in self.apply_poly(v) {
                if !r.is_zero() {
                    return None; // fall back to the exact elimination
                }
            }
        }
        Some(lifted)
    }

    fn bareiss_nullspace(&self, mut work: Vec<Vec<Poly<K>>>) -> Vec<Vec<Poly<K>>> {
        let (rank, pivots) = bareiss(&mut work);
        let pivot_set: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set.contains(&fc) {
                continue;
            }
            let mut v: Vec<RatFun<K>> = vec![RatFun::zero(); self.cols];
            v[fc] = RatFun::one();
            // back-substitute over the fraction field
            for t in (0..rank).rev() {
                let (r, c) = pivots[t];
                let mut acc = RatFun::zero();
                for j in c + 1..self.cols {
                    if !work[r][j].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&RatFun::from_poly(work[r][j].clone()).mul(&v[j]));
                    }
                }
                v[c] = acc.neg().div(&RatFun::from_poly(work[r][c].clone()));
            }
            basis.push(normalize_vector(&v));
        }
        basis
    }

    /// One exact solution of m * x = rhs, or None if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[RatFun<K>]) -> Option<Vec<RatFun<K>>> {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.entries[i][j].clone()
            } else {
                rhs[i].clone()
            }
        });
        let mut work = aug.cleared_rows();
        // restrict pivoting to the coefficient columns
        let (rank, pivots) = bareiss_cols(&mut work, self.cols);
        // consistency: a row with zero coefficients must have zero rhs
        for (i, row) in work.iter().enumerate() {
            if pivots.iter().any(|&(r, _)| r == i) {
                continue;
            }
            if row[..self.cols].iter().all(|p| p.is_zero()) && !row[self.cols].is_zero() {
                return None;
            }
        }
        let mut x: Vec<RatFun<K>> = vec![RatFun::zero(); self.cols];
        for t in (0..rank).rev() {
            let (r, c) = pivots[t];
            let mut acc = RatFun::from_poly(work[r][self.cols].clone());
            for j in c + 1..self.cols {
                if !work[r][j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&RatFun::from_poly(work[r][j].clone()).mul(&x[j]));
                }
            }
            x[c] = acc.div(&RatFun::from_poly(work[r][c].clone()));
        }
        Some(x)
    }
}

/// Fraction-free forward elimination in place over all columns.
/// Returns the rank and the (row, col) pivot positions in order.
fn bareiss<K: Field>(work: &mut Vec<Vec<Poly<K>>>) -> (usize, Vec<(usize, usize)>) {
    let cols = work.first().map_or(0, |r| r.len());
    bareiss_cols_inner(work, cols)
}

/// Elimination restricted to the first `ncols` columns (used for augmented
/// systems); trailing columns are updated but never pivoted on.
fn bareiss_cols<K: Field>(
    work: &mut Vec<Vec<Poly<K>>>,
    ncols: usize,
) -> (usize, Vec<(usize, usize)>) {
    bareiss_cols_inner(work, ncols)
}

fn bareiss_cols_inner<K: Field>(
    work: &mut Vec<Vec<Poly<K>>>,
    ncols: usize,
) -> (usize, Vec<(usize, usize)>) {
    let rows = work.len();
    let mut rank = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev_piv: Poly<K> = Poly::one();
    for col in 0..ncols {
        if rank >= rows {
            break;
        }
        // smallest-degree nonzero pivot slows entry growth
        let mut best: Option<(usize, isize)> = None;
        for i in rank..rows {
            let d = work[i][col].degree();
            if d >= 0 && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        let Some((pr, _)) = best else { continue };
        work.swap(rank, pr);
        let piv = work[rank][col].clone();
        for i in rank + 1..rows {
            let factor = work[i][col].clone();
            for j in 0..work[i].len() {
                let t = piv.mul(&work[i][j]).sub(&factor.mul(&work[rank][j]));
                work[i][j] = t.exact_div(&prev_piv);
            }
        }
        prev_piv = piv;
        pivots.push((rank, col));
        rank += 1;
    }
    (rank, pivots)
}

/// Plain Gaussian elimination over a generic field, for the small dense
/// systems (Gosper ansatz, closure properties). Free variables are set to
/// zero; None when inconsistent.
pub fn solve_dense<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>) -> Option<Vec<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        rhs.swap(rank, pr);
        let inv = m[rank][col].inv();
        for j in col..cols {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        rhs[rank] = rhs[rank].mul(&inv);
        for i in 0..rows {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..cols {
                m[i][j] = m[i][j].sub(&factor.mul(&m[rank][j]));
            }
            rhs[i] = rhs[i].sub(&factor.mul(&rhs[rank]));
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for i in rank..rows {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![F::zero(); cols];
    for (r, c) in pivots {
        x[c] = rhs[r].clone();
    }
    Some(x)
}

/// Clears denominators and polynomial content, removes the rational
/// content at the leaf level, and fixes the sign of the first nonzero
/// entry's leading coefficient.
pub fn normalize_vector<K: Field>(v: &[RatFun<K>]) -> Vec<Poly<K>> {
    let mut den = Poly::one();
    for e in v {
        den = Poly::lcm(&den, e.den());
    }
    let out: Vec<Poly<K>> = v
        .iter()
        .map(|e| e.num().mul(&den.exact_div(e.den())))
        .collect();
    normalize_poly_vector(out)
}

/// Content and sign normalization of an already-polynomial vector.
pub fn normalize_poly_vector<K: Field>(mut out: Vec<Poly<K>>) -> Vec<Poly<K>> {
    use crate::field::{rat_gcd, Rat};
    use num_traits::One;
    let mut content = Poly::zero();
    for p in &out {
        content = Poly::gcd(&content, p);
        if content.is_constant() && !content.is_zero() {
            break;
        }
    }
    if content.degree() > 0 {
        out = out.iter().map(|p| p.exact_div(&content)).collect();
    }
    let mut c = <Rat as Field>::zero();
    for p in &out {
        for q in p.coeffs() {
            c = rat_gcd(&c, &q.content_hint());
        }
    }
    let mut scale = if c.is_zero() || c.is_one() {
        <Rat as Field>::one()
    } else {
        c.recip()
    };
    if let Some(first) = out.iter().find(|p| !p.is_zero()) {
        if first.leading().lead_sign() < 0 {
            scale = -scale;
        }
    }
    if !scale.is_one() {
        let ks = K::from_rat(&scale);
        out = out.iter().map(|p| p.scale(&ks)).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    type Qn = RatFun<Rat>;

    fn c(v: i64) -> Qn {
        Qn::from_i64(v)
    }

    fn n_poly(coeffs: &[i64]) -> Qn {
        RatFun::from_poly(Poly::from_i64s(coeffs))
    }

    #[test]
    fn pascal_search_matrix_kernel() {
        // coefficient matrix of the order-(1,1) ansatz for binomial(n,k)
        let m = Matrix::from_rows(vec![
            vec![n_poly(&[-1, -1]), n_poly(&[0, -1, -1]), n_poly(&[-1, -1]), n_poly(&[-1, -2, -1])],
            vec![n_poly(&[0, -1]), n_poly(&[1, 2]), n_poly(&[-1, -1]), n_poly(&[1, 1])],
            vec![c(1), c(-1), c(0), c(0)],
        ]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        // proportional to (-1, -1, 0, 1)
        let expected = [-1i64, -1, 0, 1];
        let scale = v[0].coeff(0).div(&Rat::from_i64(-1));
        for (p, e) in v.iter().zip(expected) {
            assert_eq!(p.degree() <= 0, true);
            assert_eq!(p.coeff(0), Rat::from_i64(e).mul(&scale));
        }
        // and the kernel vector annihilates the matrix exactly
        for r in m.apply_poly(v) {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = Matrix::from_fn(3, 3, |i, j| if i == j { c(1) } else { c(0) });
        assert!(m.nullspace().is_empty());
        let sol = m.solve(&[c(4), c(5), c(6)]).unwrap();
        assert_eq!(sol, vec![c(4), c(5), c(6)]);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_rows(vec![vec![c(0)]]);
        assert!(m.solve(&[c(1)]).is_none());
    }

    #[test]
    fn kernel_dimension_matches_rank() {
        // 2x4 rank-2 matrix over Q(n): kernel has dimension 2
        let m = Matrix::from_rows(vec![
            vec![n_poly(&[0, 1]), c(1), c(0), c(2)],
            vec![c(0), c(0), n_poly(&[1, 1]), c(1)],
        ]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in m.apply_poly(v) {
                assert!(r.is_zero());
            }
        }
    }
}
