//! Splitting of zero-dimensional ideals by linear algebra in the finite
//! dimensional algebra `K[x]/I`.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::FactorField;
use crate::gb::GBasis;
use crate::ideals::Ideal;
use crate::poly::{Monomial, MonomialOrdering, Polynomial};
use crate::{Error, Result};

const DP: MonomialOrdering = MonomialOrdering::Dp;
const MAX_ELEMENT_ATTEMPTS: usize = 24;

/// Row echelon form that remembers how each row was combined from the
/// inserted vectors.
struct Echelon<F> {
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
}

impl<F: FactorField> Echelon<F> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces `v` (with combination `comb`) against the rows.
    fn reduce(&self, mut v: Vec<F>, mut comb: Vec<F>) -> (Vec<F>, Vec<F>) {
        for (col, row, rcomb) in &self.rows {
            let c = v[*col].neg();
            if c.is_zero_coeff() {
                continue;
            }
            add_scaled(&mut v, &c, row);
            add_scaled(&mut comb, &c, rcomb);
        }
        (v, comb)
    }

    /// Adds a reduced nonzero vector; returns `false` (and adds nothing)
    /// if it is zero.
    fn push(&mut self, v: Vec<F>, comb: Vec<F>) -> bool {
        let Some(col) = v.iter().position(|c| !c.is_zero_coeff()) else {
            return false;
        };
        let inv = v[col].inv();
        let scale = |x: Vec<F>| x.iter().map(|c| c.mul(&inv)).collect();
        self.rows.push((col, scale(v), scale(comb)));
        true
    }
}

/// `v += c·w` on the common prefix.
fn add_scaled<F: FactorField>(v: &mut [F], c: &F, w: &[F]) {
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero_coeff() {
            *a = a.add(&c.mul(b));
        }
    }
}

/// `K[x]/I` with the standard monomials of a dp basis as vector-space
/// basis, and the matrices of multiplication by each variable. Everything
/// after construction is linear algebra on coordinate vectors.
struct Quotient<F: FactorField> {
    ctx: F::Ctx,
    nvars: usize,
    monomials: Vec<Monomial>,
    /// `mult[i][j]`: coordinates of `xᵢ · monomials[j]`
    mult: Vec<Vec<Vec<F>>>,
}

impl<F: FactorField> Quotient<F> {
    fn new(basis: &GBasis<F>) -> Self {
        let n = basis.nvars();
        let ctx = basis.ctx().clone();
        let lms: Vec<&Monomial> = basis.elements().iter().map(|g| g.lm()).collect();
        let mut index = HashMap::new();
        let mut monomials = Vec::new();
        let mut queue = VecDeque::from([Monomial::one(n)]);
        while let Some(m) = queue.pop_front() {
            if index.contains_key(&m) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            index.insert(m.clone(), monomials.len());
            monomials.push(m.clone());
            for v in 0..n {
                queue.push_back(m.mul(&Monomial::var(v, n)));
            }
        }
        let one = F::one_in(&ctx);
        let mult = (0..n)
            .map(|i| {
                monomials
                    .iter()
                    .map(|b| {
                        let mut v = vec![F::zero_in(&ctx); monomials.len()];
                        let xb = b.mul(&Monomial::var(i, n));
                        if let Some(&k) = index.get(&xb) {
                            v[k] = one.clone();
                        } else {
                            for t in basis.normal_form(&Polynomial::monomial(one.clone(), xb, DP)).terms() {
                                v[index[&t.mono]] = t.coeff.clone();
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Quotient { ctx, nvars: n, monomials, mult }
    }

    fn dim(&self) -> usize {
        self.monomials.len()
    }

    fn zero(&self) -> F {
        F::zero_in(&self.ctx)
    }

    fn one(&self) -> F {
        F::one_in(&self.ctx)
    }

    /// Coordinates of `1`, the first standard monomial.
    fn unit(&self) -> Vec<F> {
        let mut v = vec![self.zero(); self.dim()];
        v[0] = self.one();
        v
    }

    fn mul_var(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = vec![self.zero(); self.dim()];
        for (c, col) in v.iter().zip(&self.mult[i]) {
            if !c.is_zero_coeff() {
                add_scaled(&mut out, c, col);
            }
        }
        out
    }

    fn mul_poly(&self, f: &Polynomial<F>, v: &[F]) -> Vec<F> {
        let mut out = vec![self.zero(); self.dim()];
        for t in f.terms() {
            let mut w = v.to_vec();
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    w = self.mul_var(i, &w);
                }
            }
            add_scaled(&mut out, &t.coeff, &w);
        }
        out
    }

    /// Monic minimal polynomial of `l` acting on `K[x]/I`, as dense
    /// coefficients, lowest degree first.
    fn min_poly(&self, l: &Polynomial<F>) -> Vec<F> {
        let mut ech = Echelon::new();
        let mut power = self.unit();
        for k in 0..=self.dim() {
            let mut comb = vec![self.zero(); k + 1];
            comb[k] = self.one();
            let (v, comb) = ech.reduce(power.clone(), comb);
            if !ech.push(v, comb.clone()) {
                return comb;
            }
            power = self.mul_poly(l, &power);
        }
        unreachable!("the powers 1, l, …, l^dim are linearly dependent")
    }

    /// Coordinates of `g(l)`, by Horner's rule.
    fn eval(&self, g: &[F], l: &Polynomial<F>) -> Vec<F> {
        g.iter().rev().fold(vec![self.zero(); self.dim()], |acc, c| {
            let mut next = self.mul_poly(l, &acc);
            next[0] = next[0].add(c);
            next
        })
    }

    /// `I + ⟨extra⟩` with its reduced dp basis. The image of `⟨extra⟩` in
    /// `V = K[x]/I` is the smallest subspace containing `extra` and stable
    /// under every `xᵢ`; the basis is read off `V` modulo that subspace by
    /// walking monomials in increasing order (FGLM).
    fn extend(&self, extra: &[Vec<F>]) -> Ideal<F> {
        let n = self.nvars;
        let mut sub = Echelon::new();
        let mut queue: VecDeque<Vec<F>> = extra.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            let (r, _) = sub.reduce(v.clone(), Vec::new());
            if sub.push(r, Vec::new()) {
                queue.extend((0..n).map(|i| self.mul_var(i, &v)));
            }
        }
        if sub.rows.len() == self.dim() {
            return Ideal::unit(self.ctx.clone(), n);
        }
        let mut standard: Vec<Monomial> = Vec::new();
        let mut std_ech = Echelon::new();
        let mut leads: Vec<Monomial> = Vec::new();
        let mut elements = Vec::new();
        let mut candidates = vec![(Monomial::one(n), self.unit())];
        while !candidates.is_empty() {
            let pos = (0..candidates.len())
                .min_by(|&a, &b| DP.compare(&candidates[a].0, &candidates[b].0))
                .expect("nonempty");
            let (m, v) = candidates.swap_remove(pos);
            if standard.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            // `sub` is stable under the xᵢ, so reducing before multiplying is safe
            let (v, _) = sub.reduce(v, Vec::new());
            let k = standard.len();
            let mut comb = vec![self.zero(); k + 1];
            comb[k] = self.one();
            let (r, comb) = std_ech.reduce(v.clone(), comb);
            if std_ech.push(r, comb.clone()) {
                candidates.extend((0..n).map(|i| (m.mul(&Monomial::var(i, n)), self.mul_var(i, &v))));
                standard.push(m);
            } else {
                let terms = standard.iter().zip(&comb).map(|(s, c)| (c.clone(), s.clone())).chain([(self.one(), m.clone())]);
                elements.push(Polynomial::from_terms(self.ctx.clone(), n, DP, terms));
                leads.push(m);
            }
        }
        Ideal::from_basis(GBasis::from_reduced(self.ctx.clone(), n, DP, elements))
    }
}

fn mul_dense<F: FactorField>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero_in(&a[0].ctx()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// `a / m` for monic `m`, if the division is exact.
fn div_monic<F: FactorField>(a: &[F], m: &[F]) -> Option<Vec<F>> {
    let dm = m.len() - 1;
    if a.len() <= dm {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![F::zero_in(&a[0].ctx()); a.len() - dm];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dm].clone();
        if c.is_zero_coeff() {
            continue;
        }
        for (j, mj) in m.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&c.mul(mj));
        }
        quot[k] = c;
    }
    rem[..dm].iter().all(|c| c.is_zero_coeff()).then_some(quot)
}

/// Monic irreducible factors with multiplicities; empty for a constant.
fn factor_dense<F: FactorField>(g: &[F], rng: &mut ChaCha8Rng) -> Vec<(Vec<F>, u32)> {
    if g.len() <= 1 {
        return Vec::new();
    }
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    F::factor_dense(g, &mut local).1
}

/// Pairs `(Qᵢ, Pᵢ)`: the primary components of the zero-dimensional
/// `ideal` with their (maximal) primes.
///
/// The radical comes from the squarefree parts of the minimal polynomials
/// of the variables. If the minimal polynomial of some `l` over `√I` has
/// several irreducible factors `mᵢ`, then `I = ⋂ ⟨I, mᵢ(l)^eᵢ⟩` (with `eᵢ`
/// the multiplicities over `I`) and `⟨√I, mᵢ(l)⟩` is the radical of each
/// piece, which is split further. A piece is primary once some `l` has an
/// irreducible minimal polynomial over the radical of degree
/// `dim K[x]/√I`: then `K[x]/√I = K[l]` is a field.
pub(super) fn split_zero_dim<F: FactorField>(ideal: &Ideal<F>, rng: &mut ChaCha8Rng) -> Result<Vec<(Ideal<F>, Ideal<F>)>> {
    let n = ideal.nvars();
    let ctx = ideal.ctx().clone();
    let quot = Quotient::new(&ideal.gb_with(DP));
    let sqfree: Vec<Vec<F>> = (0..n)
        .map(|v| {
            let x = Polynomial::var(v, ctx.clone(), n, DP);
            let one = vec![F::one_in(&ctx)];
            let product = factor_dense(&quot.min_poly(&x), rng).iter().fold(one, |acc, (f, _)| mul_dense(&acc, f));
            quot.eval(&product, &x)
        })
        .collect();
    let radical = quot.extend(&sqfree);
    let mut out = Vec::new();
    split_with_radical(ideal.clone(), &quot, radical, None, rng, &mut out)?;
    Ok(out)
}

fn split_with_radical<F: FactorField>(
    ideal: Ideal<F>,
    quot: &Quotient<F>,
    radical: Ideal<F>,
    hint: Option<Polynomial<F>>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(Ideal<F>, Ideal<F>)>,
) -> Result<()> {
    let rad_quot = Quotient::new(radical.gb());
    let mut bound: i64 = 1;
    for attempt in 0..MAX_ELEMENT_ATTEMPTS {
        let l = match &hint {
            Some(h) if attempt == 0 => h.clone(),
            _ => candidate(&rad_quot, attempt, &mut bound, rng),
        };
        let rad_min = rad_quot.min_poly(&l);
        let factors = factor_dense(&rad_min, rng);
        if factors.len() == 1 {
            if rad_min.len() - 1 == rad_quot.dim() {
                out.push((ideal, radical));
                return Ok(());
            }
            continue;
        }
        // the factors over I are those over the radical; only the
        // multiplicities differ
        let mut mp = quot.min_poly(&l);
        for (m, _) in factors {
            let mut e = 0;
            while let Some(q) = div_monic(&mp, &m) {
                mp = q;
                e += 1;
            }
            let me = (1..e).fold(m.clone(), |acc, _| mul_dense(&acc, &m));
            let q = quot.extend(&[quot.eval(&me, &l)]);
            let p = rad_quot.extend(&[rad_quot.eval(&m, &l)]);
            let piece = Quotient::new(q.gb());
            split_with_radical(q, &piece, p, Some(l.clone()), rng, out)?;
        }
        return Ok(());
    }
    Err(Error::GeneralPosition { attempts: MAX_ELEMENT_ATTEMPTS, ideal: format!("{}", ideal.display(&[])) })
}

/// The variables (last first), then a few random linear forms, then random
/// elements of `K[x]/√I` as combinations of its standard monomials. The
/// coefficient bound doubles with each random candidate.
fn candidate<F: FactorField>(rad_quot: &Quotient<F>, attempt: usize, bound: &mut i64, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    const LINEAR_FORMS: usize = 4;
    let n = rad_quot.nvars;
    let ctx = &rad_quot.ctx;
    if attempt < n {
        return Polynomial::var(n - 1 - attempt, ctx.clone(), n, DP);
    }
    let b = *bound;
    *bound = bound.saturating_mul(2);
    let mut coeff = || F::from_i64(rng.gen_range(-b..=b), ctx);
    let monomials: Vec<Monomial> = if attempt < n + LINEAR_FORMS {
        (0..n).map(|v| Monomial::var(v, n)).collect()
    } else {
        rad_quot.monomials.clone()
    };
    let terms: Vec<(F, Monomial)> = monomials.into_iter().map(|m| (coeff(), m)).collect();
    Polynomial::from_terms(ctx.clone(), n, DP, terms)
}
