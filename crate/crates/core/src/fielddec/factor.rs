use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{fpx, zx};
use crate::gb::{canonical_cmp, div_exact, GbCoeff};
use crate::ideals::{intersect, Ideal};
use crate::numth::{BigRat, FpElem};
use crate::poly::{Coeff, Field, Monomial, Polynomial};
use crate::{Error, Result};

/// `unit · ∏ fᵢ^{eᵢ}` with monic, pairwise distinct irreducible `fᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList<C: Coeff> {
    pub unit: C,
    pub factors: Vec<(Polynomial<C>, u32)>,
}

impl<C: FactorField> FactorList<C> {
    pub fn recompose(&self, nvars: usize, ord: crate::poly::MonomialOrdering) -> Polynomial<C> {
        let start = Polynomial::constant(self.unit.clone(), nvars, ord);
        self.factors.iter().fold(start, |acc, (f, e)| acc.mul(&f.pow(*e)))
    }
}

/// Fields with a univariate factorization routine.
pub trait FactorField: Field + GbCoeff {
    /// Leading coefficient and monic irreducible factors (with multiplicity)
    /// of a nonconstant dense polynomial, lowest degree first.
    fn factor_dense(f: &[Self], rng: &mut ChaCha8Rng) -> (Self, Vec<(Vec<Self>, u32)>);
}

impl FactorField for FpElem {
    fn factor_dense(f: &[Self], rng: &mut ChaCha8Rng) -> (Self, Vec<(Vec<Self>, u32)>) {
        let p = f[0].modulus();
        let dense: fpx::Fpx = f.iter().map(|c| c.value()).collect();
        let (lc, facs) = fpx::factor(&dense, p, rng);
        let lift = |g: fpx::Fpx| g.into_iter().map(|c| FpElem::from_u64(c, p)).collect();
        (FpElem::from_u64(lc, p), facs.into_iter().map(|(g, e)| (lift(g), e)).collect())
    }
}

impl FactorField for BigRat {
    fn factor_dense(f: &[Self], rng: &mut ChaCha8Rng) -> (Self, Vec<(Vec<Self>, u32)>) {
        let (_, facs) = zx::factor_q(&f.to_vec(), rng);
        let monic = |g: zx::Zx| {
            let l = g.last().unwrap().clone();
            g.into_iter().map(|c| BigRat::new(c, l.clone())).collect()
        };
        (f.last().unwrap().clone(), facs.into_iter().map(|(g, e)| (monic(g), e)).collect())
    }
}

fn univariate_var<C: Coeff>(f: &Polynomial<C>) -> Result<usize> {
    let s = f.support();
    match s.len() {
        0 => Err(Error::FactorInput("constant polynomial".into())),
        1 => Ok(s.indices().next().unwrap()),
        _ => Err(Error::FactorInput("polynomial is not univariate".into())),
    }
}

/// Factorization of a univariate polynomial over `𝔽ₚ` (Cantor–Zassenhaus,
/// randomness from `seed`).
pub fn factor_univariate_fp(f: &Polynomial<FpElem>, seed: u64) -> Result<FactorList<FpElem>> {
    univariate_var(f)?;
    factor(f, seed)
}

/// Factorization of a univariate polynomial over `ℚ` (Zassenhaus).
pub fn factor_univariate_q(f: &Polynomial<BigRat>, seed: u64) -> Result<FactorList<BigRat>> {
    univariate_var(f)?;
    factor(f, seed)
}

/// Irreducible factorization of a multivariate polynomial over `ℚ` or `𝔽ₚ`.
///
/// Monomial content is split off; the rest is mapped to one variable by a
/// Kronecker substitution `x_k ↦ t^{w_k}` (weights from the degree bounds),
/// factored there, and true factors are recovered by trying products of
/// sub-multisets of the univariate factors in order of increasing size.
pub fn factor<C: FactorField>(f: &Polynomial<C>, seed: u64) -> Result<FactorList<C>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.nvars();
    let ord = f.ordering();
    let ctx = f.ctx().clone();
    let unit = f.lc().clone();
    let mut factors: Vec<(Polynomial<C>, u32)> = Vec::new();

    let mut content = vec![u32::MAX; n];
    for t in f.terms() {
        for (v, &e) in t.mono.exponents().iter().enumerate() {
            content[v] = content[v].min(e);
        }
    }
    let shift = Monomial::from_exponents(&content);
    let mut rest = Polynomial::from_terms(ctx.clone(), n, ord, f.terms().iter().map(|t| (t.coeff.clone(), t.mono.div(&shift).unwrap())))
        .monic();
    for (v, &e) in content.iter().enumerate() {
        if e > 0 {
            factors.push((Polynomial::var(v, ctx.clone(), n, ord), e));
        }
    }

    let support: Vec<usize> = rest.support().indices().collect();
    if !support.is_empty() {
        let mut weights = vec![0u64; n];
        let mut w = 1u64;
        for &v in &support {
            weights[v] = w;
            w = w.checked_mul(rest.degree_in(v) as u64 + 1).ok_or_else(|| Error::FactorInput("degree too large".into()))?;
        }
        let image_len = usize::try_from(w).map_err(|_| Error::FactorInput("degree too large".into()))?;
        let mut image = vec![C::zero_in(&ctx); image_len];
        for t in rest.terms() {
            let k: u64 = support.iter().map(|&v| t.mono.degree_in(v) as u64 * weights[v]).sum();
            image[k as usize] = t.coeff.clone();
        }
        while image.last().is_some_and(|c| c.is_zero_coeff()) {
            image.pop();
        }
        let (_, ufacs) = C::factor_dense(&image, &mut rng);
        let unsub = |dense: &[C]| -> Polynomial<C> {
            let terms = dense.iter().enumerate().filter(|(_, c)| !c.is_zero_coeff()).map(|(k, c)| {
                let mut exps = vec![0u32; n];
                let mut k = k as u64;
                for (idx, &v) in support.iter().enumerate() {
                    let radix = support.get(idx + 1).map(|&nv| weights[nv] / weights[v]);
                    match radix {
                        Some(r) => {
                            exps[v] = (k % r) as u32;
                            k /= r;
                        }
                        None => exps[v] = k as u32,
                    }
                }
                (c.clone(), Monomial::from_exponents(&exps))
            });
            Polynomial::from_terms(ctx.clone(), n, ord, terms).monic()
        };

        let mut counts: Vec<u32> = ufacs.iter().map(|(_, e)| *e).collect();
        let dense_pow = |g: &[C], e: u32| -> Vec<C> {
            let mut acc = vec![C::one_in(&ctx)];
            for _ in 0..e {
                acc = dense_mul(&acc, g, &ctx);
            }
            acc
        };
        'outer: loop {
            let total: u32 = counts.iter().sum();
            for size in 1..=total / 2 {
                for choice in sub_multisets(&counts, size) {
                    let prod = choice
                        .iter()
                        .enumerate()
                        .fold(vec![C::one_in(&ctx)], |acc, (j, &c)| dense_mul(&acc, &dense_pow(&ufacs[j].0, c), &ctx));
                    let cand = unsub(&prod);
                    if cand.is_constant() {
                        continue;
                    }
                    let mut k = 0;
                    while let Some(q) = div_exact(&rest, &cand) {
                        rest = q;
                        k += 1;
                    }
                    if k > 0 {
                        for (j, c) in choice.iter().enumerate() {
                            counts[j] -= c * k;
                        }
                        factors.push((cand, k));
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if !rest.is_constant() {
            factors.push((rest.monic(), 1));
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(FactorList { unit, factors })
}

fn dense_mul<C: Coeff>(a: &[C], b: &[C], ctx: &C::Ctx) -> Vec<C> {
    let mut out = vec![C::zero_in(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_assign(&x.mul(y));
        }
    }
    out
}

/// Count vectors `c ≤ counts` with `Σc = size`, in lexicographic order.
fn sub_multisets(counts: &[u32], size: u32) -> Vec<Vec<u32>> {
    fn rec(counts: &[u32], size: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == counts.len() {
            if size == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let remaining: u32 = counts[prefix.len()..].iter().sum();
        if remaining < size {
            return;
        }
        let i = prefix.len();
        for c in (0..=counts[i].min(size)).rev() {
            prefix.push(c);
            rec(counts, size - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(counts, size, &mut Vec::new(), &mut out);
    out
}

/// Product of the distinct irreducible factors (monic).
pub fn squarefree_part<C: FactorField>(f: &Polynomial<C>, seed: u64) -> Result<Polynomial<C>> {
    let fl = factor(f, seed)?;
    let one = Polynomial::one(f.ctx().clone(), f.nvars(), f.ordering());
    Ok(fl.factors.iter().fold(one, |acc, (g, _)| acc.mul(g)))
}

/// Least common multiple: the generator of `⟨a⟩ ∩ ⟨b⟩` (a principal
/// ideal, whose reduced basis has one element also over `ℤ`).
pub fn poly_lcm<C: GbCoeff>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    assert!(!a.is_zero() && !b.is_zero());
    let ia = Ideal::new(a.ctx().clone(), a.nvars(), [a.clone()]);
    let ib = Ideal::new(b.ctx().clone(), b.nvars(), [b.clone()]);
    let meet = intersect(&ia, &ib);
    let els = meet.gb().elements();
    debug_assert_eq!(els.len(), 1);
    els[0].with_ordering(a.ordering())
}

/// Greatest common divisor `a·b / lcm(a, b)`, normalized.
pub fn poly_gcd<C: GbCoeff>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    let l = poly_lcm(a, b);
    C::normalize(div_exact(&a.mul(b), &l).expect("lcm divides the product"))
}
