//! Dense univariate polynomials over `ℚ` and `ℤ` (lowest degree first),
//! squarefree decomposition and Zassenhaus factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fpx;
use crate::numth::{small_primes, BigRat};

pub type Zx = Vec<BigInt>;
pub type Qx = Vec<BigRat>;

fn qtrim(mut f: Qx) -> Qx {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn ztrim(mut f: Zx) -> Zx {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn qsub(a: &Qx, b: &Qx) -> Qx {
    let n = a.len().max(b.len());
    let z = BigRat::zero();
    qtrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn qdivrem(a: &Qx, b: &Qx) -> (Qx, Qx) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRat::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.truncate(b.len() - 1);
    (qtrim(q), qtrim(r))
}

fn qmonic(f: &Qx) -> Qx {
    match f.last() {
        None => Vec::new(),
        Some(l) => f.iter().map(|c| c / l).collect(),
    }
}

/// Monic gcd, by the primitive remainder sequence over `ℤ`. A gcd of `1`
/// modulo one prime not dividing either leading coefficient settles the
/// (frequent) coprime case without it.
fn qgcd(a: &Qx, b: &Qx) -> Qx {
    if a.is_empty() || b.is_empty() {
        return qmonic(if a.is_empty() { b } else { a });
    }
    let (mut a, mut b) = (primitive(a), primitive(b));
    let good = small_primes()[1000..].iter().map(|&p| p as u64).find(|&p| {
        let m = BigInt::from(p);
        !(a.last().unwrap() % &m).is_zero() && !(b.last().unwrap() % &m).is_zero()
    });
    if let Some(p) = good {
        if fpx::deg(&fpx::gcd(&to_fp(&a, p), &to_fp(&b, p), p)) == 0 {
            return vec![BigRat::one()];
        }
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = zprimitive(&pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    let l = BigRat::from_integer(a.last().unwrap().clone());
    a.into_iter().map(|c| BigRat::from_integer(c) / &l).collect()
}

/// `lc(b)^k · a mod b` with `k` making the division exact.
fn pseudo_rem(a: &Zx, b: &Zx) -> Zx {
    let lb = b.last().unwrap();
    let mut r = a.clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r = ztrim(r);
    }
    r
}

fn qderiv(f: &Qx) -> Qx {
    qtrim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigRat::from_integer(BigInt::from(i))).collect())
}

/// Yun's squarefree decomposition over `ℚ` of a nonconstant `f`: monic
/// coprime squarefree `(g, e)` with `f = lc·∏ g^e`.
pub fn squarefree_decomposition(f: &Qx) -> Vec<(Qx, u32)> {
    let f = qmonic(f);
    let d = qderiv(&f);
    let a0 = qgcd(&f, &d);
    let mut b = qdivrem(&f, &a0).0;
    let c = qdivrem(&d, &a0).0;
    let mut dd = qsub(&c, &qderiv(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = qgcd(&b, &dd);
        b = qdivrem(&b, &a).0;
        let c = qdivrem(&dd, &a).0;
        dd = qsub(&c, &qderiv(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Primitive integer multiple with positive leading coefficient.
pub fn primitive(f: &Qx) -> Zx {
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: Zx = f.iter().map(|c| c.numer() * &den / c.denom()).collect();
    zprimitive(&z)
}

fn zprimitive(z: &Zx) -> Zx {
    let mut g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    if z.last().unwrap().is_negative() {
        g = -g;
    }
    z.iter().map(|c| c / &g).collect()
}

fn zmul(a: &Zx, b: &Zx) -> Zx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

/// Exact division in `ℤ[x]`.
fn zdiv_exact(a: &Zx, b: &Zx) -> Option<Zx> {
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.clone();
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let (c, rr) = r[k + b.len() - 1].div_rem(lead);
        if !rr.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

fn to_fp(z: &Zx, p: u64) -> fpx::Fpx {
    let m = BigInt::from(p);
    fpx::trim(z.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect())
}

fn from_fp(f: &fpx::Fpx) -> Zx {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Symmetric residues of `f` modulo `m`.
fn symmetric(f: &Zx, m: &BigInt) -> Zx {
    let half: BigInt = m >> 1;
    ztrim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Irreducible factors of a primitive squarefree `g` with positive
/// leading coefficient.
pub fn zassenhaus(g: &Zx, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Zx> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.clone()];
    }
    let lc = g.last().unwrap().clone();
    // pick the good prime (of the first few) giving the fewest modular factors
    let mut best: Option<(u64, Vec<fpx::Fpx>)> = None;
    let mut tried = 0;
    for &p in small_primes().iter().skip(1) {
        let p = p as u64;
        if (&lc % p).is_zero() {
            continue;
        }
        let gp = to_fp(g, p);
        if !fpx::is_one(&fpx::gcd(&gp, &fpx::derivative(&gp, p), p)) {
            continue;
        }
        let (_, facs) = fpx::factor(&gp, p, rng);
        let facs: Vec<fpx::Fpx> = facs.into_iter().map(|(f, _)| f).collect();
        if facs.len() == 1 {
            return vec![g.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, factors) = best.expect("some prime is good for a squarefree polynomial");

    // coefficient bound for factors, times lc, doubled for symmetric residues
    let maxc = g.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = BigInt::from(2) * &lc * (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let mut modulus = BigInt::from(p);
    let mut k = 1;
    while modulus <= bound {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift(g, &factors, p, k);

    // recombination over subsets of increasing size
    let mut g = g.clone();
    let mut pool: Vec<Zx> = lifted;
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in subsets(pool.len(), size) {
            let lcg = g.last().unwrap().clone();
            let mut cand: Zx = vec![lcg];
            for &i in &subset {
                cand = symmetric(&zmul(&cand, &pool[i]), &modulus);
            }
            let cand = zprimitive(&cand);
            if let Some(q) = zdiv_exact(&g, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                result.push(cand);
                g = q;
                pool = pool.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, f)| f).collect();
            }
            None => size += 1,
        }
    }
    result.push(zprimitive(&g));
    result
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut pos = k;
        cur = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            if next[pos] < n - k + pos {
                next[pos] += 1;
                for q in pos + 1..k {
                    next[q] = next[q - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

/// Lifts `g ≡ lc·∏ fᵢ (mod p)` (monic `fᵢ`, pairwise coprime) to a
/// factorization modulo `p^k`, one power of `p` at a time.
fn hensel_lift(g: &Zx, factors: &[fpx::Fpx], p: u64, k: u32) -> Vec<Zx> {
    let lc = g.last().unwrap().clone();
    let lc_inv = fpx::inv(lc.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p);
    // sᵢ = (∏_{j≠i} fⱼ)⁻¹ mod fᵢ over 𝔽ₚ
    let s: Vec<fpx::Fpx> = (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![1u64], |acc, (_, f)| fpx::mul(&acc, f, p));
            fpx::inv_mod(&others, &factors[i], p)
        })
        .collect();
    let mut lifted: Vec<Zx> = factors.iter().map(from_fp).collect();
    let mut m = BigInt::from(p);
    for _ in 1..k {
        let prod = lifted.iter().fold(vec![lc.clone()], |acc, f| zmul(&acc, f));
        let n = g.len().max(prod.len());
        let diff: Zx = (0..n)
            .map(|i| g.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        debug_assert!(diff.iter().all(|c| (c % &m).is_zero()));
        let e: Zx = diff.iter().map(|c| c / &m).collect();
        let ep = fpx::scale(&to_fp(&e, p), lc_inv, p);
        if !ep.is_empty() {
            for (i, f) in lifted.iter_mut().enumerate() {
                let delta = fpx::rem(&fpx::mul(&ep, &s[i], p), &factors[i], p);
                for (j, c) in delta.iter().enumerate() {
                    f[j] += &m * BigInt::from(*c);
                }
            }
        }
        m *= p;
    }
    lifted
}

/// `f = unit·∏ gᵢ^{eᵢ}` with primitive integer `gᵢ` (positive leading
/// coefficient), irreducible over `ℚ`, sorted by degree then coefficients.
pub fn factor_q(f: &Qx, rng: &mut rand_chacha::ChaCha8Rng) -> (BigRat, Vec<(Zx, u32)>) {
    let mut factors = Vec::new();
    let mut prod = BigRat::one();
    for (part, e) in squarefree_decomposition(f) {
        for g in zassenhaus(&primitive(&part), rng) {
            let lcg = BigRat::from_integer(g.last().unwrap().clone());
            for _ in 0..e {
                prod *= &lcg;
            }
            factors.push((g, e));
        }
    }
    factors.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev())));
    (f.last().unwrap() / prod, factors)
}

