//! Integer-polynomial arithmetic backing the rational layer.
//!
//! Rational polynomials are scaled to primitive integer polynomials here
//! for the two operations where naive field arithmetic is too slow or too
//! blowup-prone: gcd (computed modulo word-size primes and lifted by CRT)
//! and factorization (Zassenhaus: factor mod p, Hensel lift, recombine).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::Rat;
use crate::poly::Poly;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zdeg(v: &ZPoly) -> isize {
    v.len() as isize - 1
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zcontent(a: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn zdivexact(a: &ZPoly, d: &BigInt) -> ZPoly {
    a.iter().map(|c| c / d).collect()
}

/// Primitive part with positive leading coefficient; returns (content, pp)
/// where content carries the sign.
fn zprimitive(a: &ZPoly) -> (BigInt, ZPoly) {
    if a.is_empty() {
        return (BigInt::zero(), Vec::new());
    }
    let mut c = zcontent(a);
    if a.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    (c.clone(), zdivexact(a, &c))
}

/// Exact division in Z[x]; panics if not exact.
fn zdiv(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        assert!(a.is_empty(), "inexact integer polynomial division");
        return Vec::new();
    }
    let mut rem = a.clone();
    let lead = b.last().unwrap();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (b.len() - 1..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(lead);
        assert!(r.is_zero(), "inexact integer polynomial division");
        for (j, bc) in b.iter().enumerate() {
            let idx = i + 1 + j - b.len();
            rem[idx] = &rem[idx] - &q * bc;
        }
        quo[i + 1 - b.len()] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact integer polynomial division");
    ztrim(quo)
}

fn zeval(a: &ZPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Clears denominators: p = (n/d) * pp with pp primitive integer.
pub fn qpoly_to_z(p: &Poly<Rat>) -> (Rat, ZPoly) {
    if p.is_zero() {
        return (Rat::zero(), Vec::new());
    }
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let (content, pp) = zprimitive(&ints);
    (BigRational::new(content, den), pp)
}

pub fn zpoly_to_q(p: &ZPoly) -> Poly<Rat> {
    Poly::from_coeffs(p.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

// ---- arithmetic modulo a word prime ----------------------------------

pub(crate) fn mod_p(c: &BigInt, p: u64) -> u64 {
    let m = (c % BigInt::from(p)).to_i64().unwrap();
    if m < 0 {
        (m + p as i64) as u64
    } else {
        m as u64
    }
}

pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

/// Polynomial over Z/p, lowest degree first.
type PPoly = Vec<u64>;

fn ptrim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    ptrim(out)
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = subm(x, y, p);
    }
    ptrim(out)
}

fn pscale(a: &[u64], c: u64, p: u64) -> PPoly {
    ptrim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    let mut rem: PPoly = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), ptrim(rem));
    }
    let linv = invm(*b.last().unwrap(), p);
    let mut quo = vec![0u64; rem.len() - b.len() + 1];
    for i in (b.len() - 1..rem.len()).rev() {
        if rem[i] == 0 {
            continue;
        }
        let q = mulm(rem[i], linv, p);
        quo[i + 1 - b.len()] = q;
        for (j, &bc) in b.iter().enumerate() {
            let idx = i + 1 + j - b.len();
            rem[idx] = subm(rem[idx], mulm(q, bc, p), p);
        }
    }
    (ptrim(quo), ptrim(rem))
}

fn pmonic(a: &[u64], p: u64) -> PPoly {
    if a.is_empty() {
        return Vec::new();
    }
    pscale(a, invm(*a.last().unwrap(), p), p)
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let (_, r) = pdivrem(&a, &b, p);
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

fn pderiv(a: &[u64], p: u64) -> PPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    ptrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % p, p))
            .collect(),
    )
}

fn ppowmod(mut base: PPoly, mut e: u64, m: &[u64], p: u64) -> PPoly {
    let mut acc = vec![1u64];
    base = pdivrem(&base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = pdivrem(&pmul(&acc, &base, p), m, p).1;
        }
        base = pdivrem(&pmul(&base, &base, p), m, p).1;
        e >>= 1;
    }
    acc
}

fn zpoly_mod(a: &ZPoly, p: u64) -> PPoly {
    ptrim(a.iter().map(|c| mod_p(c, p)).collect())
}

/// Descending iterator over 31-bit primes.
pub(crate) fn prime_iter() -> impl Iterator<Item = u64> {
    (0u64..).filter_map(|k| {
        let n = 2147483647 - 2 * k;
        if n < 3 {
            return None;
        }
        let mut d = 3u64;
        while d * d <= n {
            if n % d == 0 {
                return None;
            }
            d += 2;
        }
        Some(n)
    })
}

// ---- modular gcd over Z[x] --------------------------------------------

/// Gcd of primitive integer polynomials via reduction mod word primes and
/// CRT, with a final trial-division check.
fn zgcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let lc_g = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut crt_mod = BigInt::one();
    let mut crt_coeffs: ZPoly = Vec::new();
    for p in prime_iter() {
        if (a.last().unwrap() % BigInt::from(p)).is_zero()
            || (b.last().unwrap() % BigInt::from(p)).is_zero()
        {
            continue;
        }
        let gp = pgcd(&zpoly_mod(a, p), &zpoly_mod(b, p), p);
        if gp.len() == 1 {
            return vec![BigInt::one()];
        }
        let deg = gp.len() - 1;
        if deg > best_deg {
            continue; // unlucky prime
        }
        // scale so the leading coefficient matches gcd(lc a, lc b) mod p
        let gp = pscale(&gp, mod_p(&lc_g, p), p);
        if deg < best_deg {
            best_deg = deg;
            crt_mod = BigInt::from(p);
            crt_coeffs = gp.iter().map(|&c| BigInt::from(c)).collect();
        } else {
            // CRT combine with the accumulated modulus
            let pb = BigInt::from(p);
            let m_inv = mod_inverse(&crt_mod, &pb);
            let new_mod = &crt_mod * &pb;
            for (i, cc) in crt_coeffs.iter_mut().enumerate() {
                let target = BigInt::from(*gp.get(i).unwrap_or(&0));
                let diff = (((&target - &*cc) % &pb) + &pb) % &pb;
                let t = (diff * &m_inv) % &pb;
                *cc = &*cc + &crt_mod * t;
            }
            crt_mod = new_mod;
        }
        // symmetric representatives, primitive part, trial division
        let half = &crt_mod / 2;
        let sym: ZPoly = crt_coeffs
            .iter()
            .map(|c| if c > &half { c - &crt_mod } else { c.clone() })
            .collect();
        let (_, cand) = zprimitive(&ztrim(sym));
        if cand.is_empty() {
            continue;
        }
        if zdivides(&cand, a) && zdivides(&cand, b) {
            return cand;
        }
    }
    unreachable!("prime iterator is infinite");
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    ((e.x % m) + m) % m
}

fn zdivides(d: &ZPoly, a: &ZPoly) -> bool {
    if a.is_empty() {
        return true;
    }
    if d.is_empty() || d.len() > a.len() {
        return false;
    }
    // pseudo-division style check with exact bigint steps
    let mut rem = a.clone();
    let lead = d.last().unwrap();
    for i in (d.len() - 1..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        for (j, dc) in d.iter().enumerate() {
            let idx = i + 1 + j - d.len();
            rem[idx] = &rem[idx] - &q * dc;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

/// Monic gcd in Q[x], computed through primitive integer polynomials.
pub fn qpoly_gcd(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (_, za) = qpoly_to_z(a);
    let (_, zb) = qpoly_to_z(b);
    let g = zgcd_primitive(&za, &zb);
    zpoly_to_q(&g).monic()
}

// ---- factorization over Z/p (Cantor-Zassenhaus) -----------------------

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factors a monic squarefree polynomial over Z/p into monic irreducibles.
fn factor_mod_p(f: &PPoly, p: u64, rng: &mut XorShift) -> Vec<PPoly> {
    let mut out = Vec::new();
    // distinct-degree splitting: x^(p^d) - x collects factors of degree d
    let mut h = vec![0u64, 1]; // x
    let mut rest = f.clone();
    let mut d = 0u64;
    while zdeg_p(&rest) > 0 {
        d += 1;
        if (zdeg_p(&rest) as u64) < 2 * d {
            out.push(pmonic(&rest, p));
            break;
        }
        h = ppowmod(h, p, &rest, p);
        let hx = psub(&h, &[0, 1], p);
        let g = pgcd(&rest, &hx, p);
        if zdeg_p(&g) > 0 {
            equal_degree_split(&g, d as usize, p, rng, &mut out);
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
    }
    out
}

fn zdeg_p(a: &PPoly) -> isize {
    a.len() as isize - 1
}

/// Cantor-Zassenhaus equal-degree splitting of a product of irreducibles
/// that all have degree d.
fn equal_degree_split(f: &PPoly, d: usize, p: u64, rng: &mut XorShift, out: &mut Vec<PPoly>) {
    let n = zdeg_p(f) as usize;
    if n == d {
        out.push(pmonic(f, p));
        return;
    }
    loop {
        let mut r: PPoly = (0..n).map(|_| rng.next() % p).collect();
        r.push(1);
        let r = ptrim(r);
        let g = pgcd(f, &r, p);
        if zdeg_p(&g) > 0 && zdeg_p(&g) < zdeg_p(f) {
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&pdivrem(f, &g, p).0, d, p, rng, out);
            return;
        }
        // r^((p^d - 1)/2) = (prod of Frobenius iterates r^(p^i))^((p-1)/2)
        let mut frob = pdivrem(&r, f, p).1;
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = ppowmod(frob, p, f, p);
            norm = pdivrem(&pmul(&norm, &frob, p), f, p).1;
        }
        let s = ppowmod(norm, (p - 1) / 2, f, p);
        let s1 = psub(&s, &[1], p);
        let g = pgcd(f, &s1, p);
        if zdeg_p(&g) > 0 && zdeg_p(&g) < zdeg_p(f) {
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&pdivrem(f, &g, p).0, d, p, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting ----------------------------------------------------

/// Lifts a factorization f = g*h (mod m) to (mod m^2), given Bezout
/// cofactors s*g + t*h = 1 (mod m). Returns updated (g, h, s, t).
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let modv = |v: ZPoly| -> ZPoly { ztrim(v.into_iter().map(|c| c.mod_floor(&m2)).collect()) };
    let e = modv(zsub(f, &zmul(g, h)));
    // q, r = divrem(s*e, h) with h monic mod m^2
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = modv(zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)));
    let h1 = modv(zadd(h, &r));
    let b = modv(zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]));
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = modv(zsub(s, &d));
    let t1 = modv(zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)));
    (g1, h1, s1, t1)
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x + y);
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x - y);
    }
    ztrim(out)
}

/// Division with remainder by a monic polynomial, coefficients mod m.
fn zdivrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut rem: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    rem = ztrim(rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - b.len() + 1];
    for i in (b.len() - 1..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            rem[i] = BigInt::zero();
            continue;
        }
        quo[i + 1 - b.len()] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let idx = i + 1 + j - b.len();
            rem[idx] = (&rem[idx] - &q * bc).mod_floor(m);
        }
        rem[i] = BigInt::zero();
    }
    (ztrim(quo), ztrim(rem))
}

/// Lifts the modular factors of a primitive squarefree f (monic mod p
/// after scaling by lc) from mod p to mod p^(2^k) >= bound, by a balanced
/// two-way split.
fn hensel_lift_tree(f: &ZPoly, factors: &[PPoly], p: u64, bound: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let gp = left.iter().fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    let hp = right.iter().fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    // make g monic times lc(f): f = lc * prod(monic) mod p
    let lc = mod_p(f.last().unwrap(), p);
    let gp_scaled = pscale(&gp, lc, p);
    // Bezout: s*g + t*h = 1 mod p
    let (s, t) = pbezout(&gp_scaled, &hp, p);
    let mut g: ZPoly = gp_scaled.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: ZPoly = hp.iter().map(|&c| BigInt::from(c)).collect();
    let mut sb: ZPoly = s.iter().map(|&c| BigInt::from(c)).collect();
    let mut tb: ZPoly = t.iter().map(|&c| BigInt::from(c)).collect();
    let mut m = BigInt::from(p);
    while &m < bound {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &sb, &tb, &m);
        g = g1;
        h = h1;
        sb = s1;
        tb = t1;
        m = &m * &m;
    }
    let mut out = hensel_lift_tree(&g, left, p, bound);
    out.extend(hensel_lift_tree(&h, right, p, bound));
    out
}

/// Extended Euclid over Z/p: s*a + t*b = 1 for coprime a, b.
fn pbezout(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s = psub(&s0, &pmul(&q, &s1, p), p);
        let t = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "bezout of non-coprime polynomials");
    let inv = invm(r0[0], p);
    (pscale(&s0, inv, p), pscale(&t0, inv, p))
}

// ---- Zassenhaus factorization over Z ----------------------------------

/// Landau-Mignotte style bound on the coefficients of any factor,
/// multiplied by |lc(f)| for the scaled recombination test.
fn factor_bound(f: &ZPoly) -> BigInt {
    let n = f.len() as u32;
    let height = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f.last().unwrap().abs();
    (BigInt::from(2).pow(n) * BigInt::from(n)) * height * lc
}

/// Factors a primitive squarefree integer polynomial of degree >= 1 into
/// primitive irreducible factors with positive leading coefficients.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    if zdeg(f) == 1 {
        return vec![f.clone()];
    }
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    // choose a prime keeping f squarefree, preferring few modular factors
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for p in prime_iter().take(64) {
        if (f.last().unwrap() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = pmonic(&zpoly_mod(f, p), p);
        let g = pgcd(&fp, &pderiv(&fp, p), p);
        if zdeg_p(&g) != 0 {
            continue;
        }
        let facs = factor_mod_p(&fp, p, &mut rng);
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 3 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, mut modular) = best.expect("no usable prime for factorization");
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    modular.sort();
    let bound = factor_bound(f) * 2;
    let lifted = hensel_lift_tree(f, &modular, p, &bound);
    let modulus = {
        let mut m = BigInt::from(p);
        while m < bound {
            m = &m * &m;
        }
        m
    };

    // naive subset recombination
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut prod: ZPoly = vec![current.last().unwrap().clone()];
            for &i in &combo {
                prod = zmul_mod(&prod, &remaining[i], &modulus);
            }
            let sym = symmetric(&prod, &modulus);
            let (_, cand) = zprimitive(&sym);
            if cand.is_empty() {
                continue;
            }
            if zdivides(&cand, &current) {
                current = zdiv(&current, &cand);
                out.push(cand);
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if zdeg(&current) > 0 {
        out.push(zprimitive(&current).1);
    }
    out
}

fn zmul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(zmul(a, b).into_iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Irreducible factorization over Q: unit * prod of monic irreducible
/// factors with multiplicities. The unit carries content and sign.
pub fn factor_rationals(p: &Poly<Rat>) -> crate::error::Result<(Rat, Vec<(Poly<Rat>, u32)>)> {
    if p.is_zero() {
        return Err(crate::error::Error::domain("factorization of zero"));
    }
    let (unit, sqf) = crate::poly::squarefree_decomposition(p)?;
    let mut out: Vec<(Poly<Rat>, u32)> = Vec::new();
    for (q, mult) in sqf {
        // q is monic, so its monic irreducible parts multiply back to q
        let (_, zq) = qpoly_to_z(&q);
        for fac in factor_squarefree_z(&zq) {
            out.push((zpoly_to_q(&fac).monic(), mult));
        }
    }
    Ok((unit, out))
}

/// All integer roots of a nonzero rational polynomial.
///
/// Uses rational-root candidates on the primitive part: an integer root
/// divides the trailing coefficient. Falls back to full factorization when
/// the trailing coefficient resists easy divisor enumeration.
pub fn integer_roots(p: &Poly<Rat>) -> crate::error::Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(crate::error::Error::domain("integer roots of zero"));
    }
    let (_, mut z) = qpoly_to_z(p);
    let mut roots = Vec::new();
    // strip powers of x
    let mut shift0 = false;
    while !z.is_empty() && z[0].is_zero() {
        z.remove(0);
        shift0 = true;
    }
    if shift0 {
        roots.push(BigInt::zero());
    }
    if zdeg(&z) <= 0 {
        roots.sort();
        return Ok(roots);
    }
    let trailing = z[0].abs();
    if let Some(divs) = divisors_up_to(&trailing, 200_000) {
        for d in divs {
            for cand in [BigInt::from(d), BigInt::from(-(d as i64))] {
                if zeval(&z, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    } else {
        // trailing coefficient too hard to factor by trial division:
        // read integer roots off the linear factors
        let (_, facs) = factor_rationals(&zpoly_to_q(&z))?;
        for (f, _) in facs {
            if f.degree() == 1 {
                let root = -f.coeff(0);
                if root.denom().is_one() {
                    let r = root.numer().clone();
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Integer roots of a polynomial whose coefficients live in an arbitrary
/// field tower.
///
/// Candidates are read off a specialization of the coefficients to Q
/// (sound: any true root stays a root of the specialized image) and each
/// candidate is then verified exactly in the original field.
pub fn integer_roots_in<K: crate::field::Field>(p: &Poly<K>) -> Vec<i64> {
    use crate::field::SpecCtx;
    if p.is_zero() {
        return Vec::new();
    }
    'seed: for seed in 0..64u64 {
        let ctx = SpecCtx::new(seed.wrapping_mul(0x9e3779b9).wrapping_add(1));
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            match c.specialize(&ctx, 0) {
                Some(v) => coeffs.push(v),
                None => continue 'seed,
            }
        }
        let qp = Poly::<Rat>::from_coeffs(coeffs);
        if qp.is_zero() {
            continue 'seed;
        }
        let cands = match integer_roots(&qp) {
            Ok(c) => c,
            Err(_) => return Vec::new(),
        };
        let mut out = Vec::new();
        for c in cands {
            if let Some(t) = c.to_i64() {
                if p.eval(&K::from_i64(t)).is_zero() {
                    out.push(t);
                }
            }
        }
        out.sort();
        return out;
    }
    panic!("failed to specialize coefficients for integer root search");
}

/// Divisors of n by trial division, or None if a cofactor larger than
/// limit^2 remains unfactored.
fn divisors_up_to(n: &BigInt, limit: u64) -> Option<Vec<u64>> {
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut m = n.abs();
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= m && d <= limit {
        let mut e = 0;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        match m.to_u64() {
            Some(v) => primes.push((v, 1)),
            None => return None,
        }
    }
    let mut divs: Vec<u64> = vec![1];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                match d.checked_mul(pk) {
                    Some(v) => next.push(v),
                    None => return None,
                }
                pk = match pk.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        next.sort();
        next.dedup();
        divs = next;
        if divs.len() > 4096 {
            return None;
        }
    }
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio};

    fn qp(v: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(v)
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let a = qp(&[-1, 0, 1]).mul(&qp(&[3, 1, 2]));
        let b = qp(&[-1, 0, 1]).mul(&qp(&[5, -7, 1, 1]));
        let g = qpoly_gcd(&a, &b);
        assert_eq!(g, qp(&[-1, 0, 1]).monic());
    }

    #[test]
    fn factor_resultant_example() {
        // -4z^3 + 3z + 1 = -4 (z - 1) (z + 1/2)^2
        let p = qp(&[1, 3, 0, -4]);
        let (unit, facs) = factor_rationals(&p).unwrap();
        assert_eq!(unit, rat(-4));
        let mut facs = facs;
        facs.sort_by_key(|(_, m)| *m);
        assert_eq!(
            facs,
            vec![
                (qp(&[-1, 1]), 1),
                (Poly::from_rats(&[ratio(1, 2), rat(1)]), 2)
            ]
        );
    }

    #[test]
    fn factor_irreducible() {
        let p = qp(&[1, 0, 1]);
        let (unit, facs) = factor_rationals(&p).unwrap();
        assert_eq!(unit, rat(1));
        assert_eq!(facs, vec![(qp(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn factor_x4_minus_1() {
        let p = qp(&[-1, 0, 0, 0, 1]);
        let (unit, facs) = factor_rationals(&p).unwrap();
        // multiply back
        let mut prod = Poly::constant(unit);
        for (f, m) in &facs {
            prod = prod.mul(&f.pow(*m));
        }
        assert_eq!(prod, p);
        assert_eq!(facs.len(), 3);
    }

    #[test]
    fn integer_roots_examples() {
        // j(j - 3)
        let p = qp(&[0, -3, 1]);
        assert_eq!(integer_roots(&p).unwrap(), vec![BigInt::from(0), BigInt::from(3)]);
        assert!(integer_roots(&qp(&[1, 0, 1])).unwrap().is_empty());
        assert!(integer_roots(&qp(&[-3, 2])).unwrap().is_empty());
    }
}
