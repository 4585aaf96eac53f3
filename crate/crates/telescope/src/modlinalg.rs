//! Kernel bases of polynomial matrices by modular evaluation and
//! interpolation.
//!
//! The kernel entries are expressed as Cramer minors of the pivot
//! structure, so their values at any evaluation point are consistent
//! across points and primes: evaluate the matrix mod a word prime at
//! integer points, read the minors off a small Gaussian elimination,
//! interpolate, and lift by CRT until the coefficients stabilize. The
//! caller verifies the result exactly and falls back to fraction-free
//! elimination if verification fails, so luck plays no role in
//! correctness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::Rat;
use crate::poly::Poly;
use crate::zarith::{invm, mod_p, mulm, prime_iter, subm};

type ZP = Vec<BigInt>;

/// Kernel basis of a matrix of rational polynomials (entries in Q[x]),
/// one vector per free column of the detected pivot structure. Entries
/// come back primitive with a positive-leading first nonzero entry.
pub fn nullspace_rational(rows: &[Vec<Poly<Rat>>], cols: usize) -> Vec<Vec<Poly<Rat>>> {
    if rows.is_empty() {
        return (0..cols)
            .map(|i| {
                let mut v = vec![Poly::zero(); cols];
                v[i] = Poly::one();
                v
            })
            .collect();
    }
    // integerize rows
    let zrows: Vec<Vec<ZP>> = rows
        .iter()
        .map(|row| {
            let mut den = BigInt::one();
            for p in row {
                for c in p.coeffs() {
                    den = den.lcm(c.denom());
                }
            }
            row.iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .map(|c| c.numer() * (&den / c.denom()))
                        .collect()
                })
                .collect()
        })
        .collect();

    let structure = detect_structure(&zrows, cols);
    let Some((rank, pivot_rows, pivot_cols)) = structure else {
        // zero matrix: the kernel is everything
        return (0..cols)
            .map(|i| {
                let mut v = vec![Poly::zero(); cols];
                v[i] = Poly::one();
                v
            })
            .collect();
    };
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free_cols.is_empty() {
        return Vec::new();
    }
    // degree bound for the (rank x rank) minors
    let degree_bound: usize = pivot_rows
        .iter()
        .map(|&i| {
            zrows[i]
                .iter()
                .map(|p| p.len().saturating_sub(1))
                .max()
                .unwrap_or(0)
        })
        .sum();
    let needed = degree_bound + 1;

    // tracked coordinates per free column: the free column itself plus the
    // pivot columns
    let mut crt_mod = BigInt::one();
    // coefficients[fc][coord][power]
    let mut crt: Vec<Vec<Vec<BigInt>>> =
        vec![vec![vec![BigInt::zero(); needed]; rank + 1]; free_cols.len()];
    let mut last_candidate: Option<Vec<Vec<ZP>>> = None;

    for p in prime_iter().take(96) {
        let Some(per_prime) = prime_pass(&zrows, &pivot_rows, &pivot_cols, &free_cols, needed, p)
        else {
            continue; // too few usable points for this prime
        };
        // CRT-combine
        if crt_mod.is_one() {
            for (fc, coords) in per_prime.iter().enumerate() {
                for (ci, coeffs) in coords.iter().enumerate() {
                    for (t, &v) in coeffs.iter().enumerate() {
                        crt[fc][ci][t] = BigInt::from(v);
                    }
                }
            }
            crt_mod = BigInt::from(p);
        } else {
            let pb = BigInt::from(p);
            let m_inv_val = {
                let e = crt_mod.extended_gcd(&pb);
                ((e.x % &pb) + &pb) % &pb
            };
            let new_mod = &crt_mod * &pb;
            for (fc, coords) in per_prime.iter().enumerate() {
                for (ci, coeffs) in coords.iter().enumerate() {
                    for (t, &v) in coeffs.iter().enumerate() {
                        let cur = &crt[fc][ci][t];
                        let target = BigInt::from(v);
                        let diff = (((&target - cur) % &pb) + &pb) % &pb;
                        let adj = (diff * &m_inv_val) % &pb;
                        crt[fc][ci][t] = cur + &crt_mod * adj;
                    }
                }
            }
            crt_mod = new_mod;
        }
        // symmetric candidate and stabilization test
        let half = &crt_mod / 2;
        let candidate: Vec<Vec<ZP>> = crt
            .iter()
            .map(|coords| {
                coords
                    .iter()
                    .map(|coeffs| {
                        coeffs
                            .iter()
                            .map(|c| if c > &half { c - &crt_mod } else { c.clone() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if last_candidate.as_ref() == Some(&candidate) {
            return assemble(candidate, &pivot_cols, &free_cols, cols);
        }
        last_candidate = Some(candidate);
    }
    match last_candidate {
        Some(c) => assemble(c, &pivot_cols, &free_cols, cols),
        None => Vec::new(),
    }
}

/// Pivot structure (rank, pivot rows, pivot cols) detected from a few
/// modular evaluations; None if the matrix is identically zero at every
/// trial (treated as zero).
fn detect_structure(
    zrows: &[Vec<ZP>],
    cols: usize,
) -> Option<(usize, Vec<usize>, Vec<usize>)> {
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut trials = 0;
    'outer: for p in prime_iter().take(4) {
        for t in [1i64, 7, 23] {
            trials += 1;
            let m = eval_matrix(zrows, cols, p, t);
            let (rank, prows, pcols) = echelon_structure(m, zrows.len(), cols, p);
            if best.as_ref().map_or(true, |(r, _, _)| rank > *r) {
                best = Some((rank, prows, pcols));
            }
            if trials >= 5 {
                break 'outer;
            }
        }
    }
    match best {
        Some((0, _, _)) | None => None,
        other => other,
    }
}

fn eval_matrix(zrows: &[Vec<ZP>], cols: usize, p: u64, t: i64) -> Vec<Vec<u64>> {
    let tm = mod_p(&BigInt::from(t), p);
    zrows
        .iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = 0u64;
                    for c in row[j].iter().rev() {
                        acc = (mulm(acc, tm, p) + mod_p(c, p)) % p;
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Deterministic echelon pivoting: leftmost column, then topmost row.
fn echelon_structure(
    mut m: Vec<Vec<u64>>,
    nrows: usize,
    ncols: usize,
    p: u64,
) -> (usize, Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..nrows).collect();
    let mut rank = 0usize;
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        perm.swap(rank, pr);
        let inv = invm(m[rank][col], p);
        for i in rank + 1..nrows {
            if m[i][col] == 0 {
                continue;
            }
            let f = mulm(m[i][col], inv, p);
            for j in col..ncols {
                let sub = mulm(f, m[rank][j], p);
                m[i][j] = subm(m[i][j], sub, p);
            }
        }
        pivot_rows.push(perm[rank]);
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivot_rows.sort();
    (rank, pivot_rows, pivot_cols)
}

/// One prime's worth of interpolated minor coefficients:
/// result[fc][coord][power] where coord 0 is the free column's own entry
/// det(B) and coord 1.. are the pivot-column entries -x_i det(B).
fn prime_pass(
    zrows: &[Vec<ZP>],
    pivot_rows: &[usize],
    pivot_cols: &[usize],
    free_cols: &[usize],
    needed: usize,
    p: u64,
) -> Option<Vec<Vec<Vec<u64>>>> {
    let rank = pivot_rows.len();
    // reduce the required entries mod p once
    let reduce = |poly: &ZP| -> Vec<u64> { poly.iter().map(|c| mod_p(c, p)).collect() };
    let sub_rows: Vec<Vec<Vec<u64>>> = pivot_rows
        .iter()
        .map(|&i| {
            pivot_cols
                .iter()
                .chain(free_cols.iter())
                .map(|&j| reduce(&zrows[i][j]))
                .collect()
        })
        .collect();
    let mut points: Vec<u64> = Vec::with_capacity(needed);
    let mut values: Vec<Vec<Vec<u64>>> =
        vec![vec![Vec::with_capacity(needed); rank + 1]; free_cols.len()];
    let mut t: i64 = 0;
    let mut misses = 0usize;
    while points.len() < needed {
        if misses > 40 + 2 * needed {
            return None;
        }
        let tm = mod_p(&BigInt::from(t), p);
        t += 1;
        // evaluate: augmented matrix [B | free columns]
        let eval_entry = |poly: &Vec<u64>| -> u64 {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = (mulm(acc, tm, p) + c) % p;
            }
            acc
        };
        let mut aug: Vec<Vec<u64>> = sub_rows
            .iter()
            .map(|row| row.iter().map(eval_entry).collect())
            .collect();
        // elimination with partial pivoting; det of the left block
        let mut det = 1u64;
        let mut singular = false;
        for col in 0..rank {
            let Some(pr) = (col..rank).find(|&i| aug[i][col] != 0) else {
                singular = true;
                break;
            };
            if pr != col {
                aug.swap(col, pr);
                det = p - det;
                if det == p {
                    det = 0;
                }
            }
            det = mulm(det, aug[col][col], p);
            let inv = invm(aug[col][col], p);
            for i in 0..rank {
                if i == col || aug[i][col] == 0 {
                    continue;
                }
                let f = mulm(aug[i][col], inv, p);
                for j in col..rank + free_cols.len() {
                    let sub = mulm(f, aug[col][j], p);
                    aug[i][j] = subm(aug[i][j], sub, p);
                }
            }
        }
        if singular || det == 0 {
            misses += 1;
            continue;
        }
        // x = B^{-1} free_col: aug now diagonal on the left
        for (fi, _) in free_cols.iter().enumerate() {
            values[fi][0].push(det);
            for i in 0..rank {
                let xi = mulm(aug[i][rank + fi], invm(aug[i][i], p), p);
                // kernel entry at pivot col i: -x_i * det
                let v = subm(0, mulm(xi, det, p), p);
                values[fi][1 + i].push(v);
            }
        }
        points.push(tm);
    }
    // interpolate everything
    let mut out = vec![vec![vec![0u64; needed]; rank + 1]; free_cols.len()];
    for fi in 0..free_cols.len() {
        for ci in 0..=rank {
            out[fi][ci] = newton_interp(&points, &values[fi][ci], p, needed);
        }
    }
    Some(out)
}

/// Newton interpolation over Z/p; returns `len` coefficients (padded).
fn newton_interp(points: &[u64], values: &[u64], p: u64, len: usize) -> Vec<u64> {
    let n = points.len();
    let mut table = values.to_vec();
    let mut divided = Vec::with_capacity(n);
    divided.push(table[0]);
    for level in 1..n {
        for i in 0..n - level {
            let dx = subm(points[i + level], points[i], p);
            let num = subm(table[i + 1], table[i], p);
            table[i] = mulm(num, invm(dx, p), p);
        }
        divided.push(table[0]);
    }
    // expand the Newton form
    let mut acc = vec![0u64; len];
    for i in (0..n).rev() {
        // acc = acc * (x - points[i]) + divided[i]
        let mut next = vec![0u64; len];
        for t in (0..len).rev() {
            let shifted = if t > 0 { acc[t - 1] } else { 0 };
            let scaled = mulm(acc[t], points[i], p);
            next[t] = subm(shifted, scaled, p);
        }
        next[0] = (next[0] + divided[i]) % p;
        acc = next;
    }
    acc
}

/// Builds primitive, sign-normalized kernel vectors from the symmetric
/// CRT coefficients.
fn assemble(
    candidate: Vec<Vec<ZP>>,
    pivot_cols: &[usize],
    free_cols: &[usize],
    cols: usize,
) -> Vec<Vec<Poly<Rat>>> {
    let mut out = Vec::with_capacity(free_cols.len());
    for (fi, coords) in candidate.into_iter().enumerate() {
        let mut entries: Vec<ZP> = vec![Vec::new(); cols];
        entries[free_cols[fi]] = coords[0].clone();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            entries[pc] = coords[1 + i].clone();
        }
        let vec: Vec<Poly<Rat>> = entries
            .into_iter()
            .map(|e| Poly::from_coeffs(e.into_iter().map(Rat::from_integer).collect()))
            .collect();
        out.push(crate::linalg::normalize_poly_vector(vec));
    }
    out
}
