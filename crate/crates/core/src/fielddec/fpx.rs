//! Dense univariate polynomials over `𝔽ₚ`: coefficient vectors, lowest
//! degree first, trimmed so the last entry is nonzero (empty = 0).

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Fpx = Vec<u64>;

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn inv(a: u64, p: u64) -> u64 {
    crate::numth::FpElem::from_u64(a, p).inv().value()
}

pub fn trim(mut f: Fpx) -> Fpx {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> isize {
    f.len() as isize - 1
}

pub fn is_one(f: &[u64]) -> bool {
    f.len() == 1 && f[0] == 1
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Fpx {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fpx {
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
    trim(out)
}

/// `(q, r)` with `a = q·b + r`, `deg r < deg b`.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let lead_inv = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + b.len() - 1], lead_inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = subm(r[k + j], mulm(c, y, p), p);
            }
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fpx {
    divrem(a, b, p).1
}

pub fn monic(f: &[u64], p: u64) -> Fpx {
    match f.last() {
        None => Vec::new(),
        Some(&l) => scale(f, inv(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s)` with `s·a ≡ g (mod b)`, `g = gcd(a, b)` monic.
pub fn gcdex_first(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Fpx, Fpx) = (vec![1], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let l = inv(*r0.last().expect("gcd of nonzero input"), p);
    (scale(&r0, l, p), scale(&s0, l, p))
}

/// Inverse of `a` modulo `m` (they must be coprime).
pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Fpx {
    let (g, s) = gcdex_first(&rem(a, m, p), m, p);
    assert!(is_one(&g), "not invertible");
    rem(&s, m, p)
}

pub fn derivative(f: &[u64], p: u64) -> Fpx {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect())
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fpx {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Fpx {
    let mut result: Fpx = rem(&[1], m, p);
    let base = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = mulmod(&result, &result, m, p);
        if e.bit(i) {
            result = mulmod(&result, &base, m, p);
        }
    }
    result
}

/// Squarefree decomposition of a monic `f`: coprime squarefree parts
/// `(g, e)` with `f = ∏ g^e`.
pub fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(Fpx, u32)> {
    let mut out = Vec::new();
    if deg(f) < 1 {
        return out;
    }
    let d = derivative(f, p);
    let mut c = gcd(f, &d, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(&w, &c, p);
        let fac = divrem(&w, &y, p).0;
        if deg(&fac) > 0 {
            out.push((monic(&fac, p), i));
        }
        w = y;
        c = divrem(&c, &w, p).0;
        i += 1;
    }
    if deg(&c) > 0 {
        // c is a p-th power: take the root coefficient-wise
        let root: Fpx = c.iter().step_by(p as usize).copied().collect();
        for (g, e) in squarefree_decomposition(&root, p) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree `f`:
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(Fpx, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: Fpx = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = rem(&x, &f, p);
    let mut d = 1;
    while deg(&f) >= 2 * d as isize {
        h = powmod(&h, &pe, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if !is_one(&g) {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if deg(&f) > 0 {
        let k = deg(&f) as usize;
        out.push((f, k));
    }
    out
}

/// Splits a monic squarefree `f` whose irreducible factors all have
/// degree `d` (Cantor–Zassenhaus; trace map in characteristic 2).
pub fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fpx> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = if p == 2 { BigUint::zero() } else { (BigUint::from(p).pow(d as u32) - 1u32) >> 1 };
    loop {
        let a: Fpx = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let b = if p == 2 {
            // a + a² + a⁴ + … + a^{2^{d−1}}
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            sub(&powmod(&a, &exp, f, p), &[1], p)
        };
        let g = gcd(f, &b, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let other = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities of a nonconstant `f`,
/// sorted by degree then coefficients. Returns `(leading coefficient, factors)`.
pub fn factor(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> (u64, Vec<(Fpx, u32)>) {
    let lc = *f.last().expect("nonzero");
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(&monic(f, p), p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p, rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev())));
    (lc, out)
}

/// Irreducibility certificate: `gcd(f, x^{p^k} − x) = 1` for `k < deg f`
/// and `f | x^{p^{deg f}} − x`.
#[cfg(test)]
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = deg(f);
    if n < 1 {
        return false;
    }
    let f = monic(f, p);
    let x: Fpx = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = rem(&x, &f, p);
    for _ in 1..n {
        h = powmod(&h, &pe, &f, p);
        if !is_one(&gcd(&f, &sub(&h, &x, p), p)) {
            return false;
        }
    }
    h = powmod(&h, &pe, &f, p);
    sub(&h, &rem(&x, &f, p), p).is_empty()
}

