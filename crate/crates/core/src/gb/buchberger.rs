use std::collections::BTreeSet;

use super::{lt_divides, normal_form, GBasis, GbCoeff};
use crate::poly::{Monomial, MonomialOrdering, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum PairKind {
    S,
    Gcd,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    kind: PairKind,
    lcm: Monomial,
    sugar: u32,
}

/// S-polynomial over a field: cancels the leading terms.
pub fn spoly<C: GbCoeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    s_poly(f, g)
}

/// S-polynomial over `ℤ`: `(l/LC f)(L/LM f)·f − (l/LC g)(L/LM g)·g` with
/// `l`, `L` the coefficient and monomial lcms.
pub fn spoly_ring<C: GbCoeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    s_poly(f, g)
}

fn s_poly<C: GbCoeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.check_compatible(g)?;
    let l = f.lm().lcm(g.lm());
    let (a, b) = C::s_cofactors(f.lc(), g.lc());
    let mf = l.div(f.lm()).expect("lcm");
    let mg = l.div(g.lm()).expect("lcm");
    let zero = Polynomial::zero(f.ctx().clone(), f.nvars(), f.ordering());
    Ok(zero.add_mul_term(&a, &mf, f).sub_mul_term(&b, &mg, g))
}

/// GCD-polynomial over `ℤ`: `s·(L/LM f)·f + t·(L/LM g)·g` with
/// `s·LC f + t·LC g = gcd(LC f, LC g)`; its leading term is `gcd·L`.
pub fn gcdpoly_ring<C: GbCoeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.check_compatible(g)?;
    let (_, s, t) = C::bezout(f.lc(), g.lc())
        .ok_or_else(|| Error::InvalidArgument("gcd-polynomials only exist over the integers".into()))?;
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).expect("lcm");
    let mg = l.div(g.lm()).expect("lcm");
    let zero = Polynomial::zero(f.ctx().clone(), f.nvars(), f.ordering());
    Ok(zero.add_mul_term(&s, &mf, f).add_mul_term(&t, &mg, g))
}

/// Reduced Gröbner basis of `⟨gens⟩` under `ord` (strong over `ℤ`).
///
/// Panics if `gens` is empty; use [`buchberger_in`] when that can happen.
pub fn buchberger<C: GbCoeff>(gens: &[Polynomial<C>], ord: MonomialOrdering) -> GBasis<C> {
    let first = gens.first().expect("at least one generator fixes the ring");
    buchberger_in(first.ctx().clone(), first.nvars(), gens, ord)
}

/// [`buchberger`] with the ring given explicitly.
pub fn buchberger_in<C: GbCoeff>(ctx: C::Ctx, nvars: usize, gens: &[Polynomial<C>], ord: MonomialOrdering) -> GBasis<C> {
    let mut state = State::<C> { basis: Vec::new(), sugar: Vec::new(), pairs: Vec::new(), pending: BTreeSet::new() };

    let mut inputs: Vec<Polynomial<C>> =
        gens.iter().filter(|f| !f.is_zero()).map(|f| C::normalize(f.with_ordering(ord))).collect();
    // small leading terms first: fewer useless intermediate elements
    inputs.sort_by(super::canonical_cmp);
    for f in inputs {
        let h = normal_form(&f, &state.basis);
        let sugar = f.total_degree().unwrap_or(0);
        if !h.is_zero() && state.insert(h, sugar) {
            return finish(ctx, nvars, ord, state);
        }
    }
    while let Some(pair) = state.next_pair() {
        if pair.kind == PairKind::S && state.chain_criterion(&pair) {
            continue;
        }
        let (f, g) = (&state.basis[pair.i], &state.basis[pair.j]);
        let h = match pair.kind {
            PairKind::S => s_poly(f, g),
            PairKind::Gcd => gcdpoly_ring(f, g),
        }
        .expect("nonzero basis elements");
        let h = normal_form(&h, &state.basis);
        if !h.is_zero() && state.insert(h, pair.sugar) {
            break;
        }
    }
    finish(ctx, nvars, ord, state)
}

struct State<C: GbCoeff> {
    basis: Vec<Polynomial<C>>,
    /// Sugar degree of each basis element: the degree it would have if
    /// the input were homogenized.
    sugar: Vec<u32>,
    pairs: Vec<Pair>,
    pending: BTreeSet<(usize, usize, PairKind)>,
}

impl<C: GbCoeff> State<C> {
    /// Adds `h` and its pairs. Returns `true` if `h` is a unit.
    fn insert(&mut self, h: Polynomial<C>, sugar: u32) -> bool {
        let h = C::normalize(h);
        let sugar = sugar.max(h.total_degree().unwrap_or(0));
        let unit = h.is_constant() && C::is_unit(h.lc());
        let idx = self.basis.len();
        for k in 0..idx {
            let g = &self.basis[k];
            let lcm = g.lm().lcm(h.lm());
            let sugar = (self.sugar[k] + lcm.degree() - g.lm().degree()).max(sugar + lcm.degree() - h.lm().degree());
            let product = g.lm().is_coprime(h.lm()) && C::coprime(g.lc(), h.lc());
            let gcd_pair = !C::IS_FIELD && !C::divides(g.lc(), h.lc()) && !C::divides(h.lc(), g.lc());
            if !product {
                self.push_pair(Pair { i: k, j: idx, kind: PairKind::S, lcm: lcm.clone(), sugar });
            }
            if gcd_pair {
                self.push_pair(Pair { i: k, j: idx, kind: PairKind::Gcd, lcm, sugar });
            }
        }
        self.basis.push(h);
        self.sugar.push(sugar);
        unit
    }

    fn push_pair(&mut self, p: Pair) {
        self.pending.insert((p.i, p.j, p.kind));
        self.pairs.push(p);
    }

    /// Removes the pair of least sugar, then smallest lcm (ties by kind
    /// and indices).
    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.basis.first()?.ordering();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then(ord.compare(&p.lcm, &q.lcm)).then((p.kind, p.i, p.j).cmp(&(q.kind, q.i, q.j)))
        })?;
        let p = self.pairs.swap_remove(best);
        self.pending.remove(&(p.i, p.j, p.kind));
        Some(p)
    }

    /// Buchberger's chain criterion with term lcms: the S-pair `(i, j)`
    /// is redundant if some `g_k` has `LT(g_k) | lcm(LT g_i, LT g_j)` and
    /// both `(i, k)` and `(j, k)` have already been treated.
    fn chain_criterion(&self, pair: &Pair) -> bool {
        let (gi, gj) = (&self.basis[pair.i], &self.basis[pair.j]);
        let clcm = C::coeff_lcm(gi.lc(), gj.lc());
        (0..self.basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let gk = &self.basis[k];
            gk.lm().divides(&pair.lcm)
                && C::divides(gk.lc(), &clcm)
                && !self.pending.contains(&(pair.i.min(k), pair.i.max(k), PairKind::S))
                && !self.pending.contains(&(pair.j.min(k), pair.j.max(k), PairKind::S))
        })
    }
}

fn finish<C: GbCoeff>(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering, state: State<C>) -> GBasis<C> {
    let mut all: Vec<Polynomial<C>> = state.basis;
    if let Some(u) = all.iter().find(|g| g.is_constant() && C::is_unit(g.lc())) {
        let one = Polynomial::one(ctx.clone(), nvars, ord);
        debug_assert!(u.ordering() == ord);
        let g = GBasis::from_reduced(ctx, nvars, ord, vec![one]);
        C::record(&g);
        return g;
    }
    all.sort_by(super::canonical_cmp);
    let mut minimal: Vec<Polynomial<C>> = Vec::new();
    for g in all {
        if !minimal.iter().any(|h| lt_divides(h, &g)) {
            minimal.push(g);
        }
    }
    let reduced: Vec<Polynomial<C>> = (0..minimal.len())
        .map(|i| {
            let mut g = minimal[i].clone();
            let lead = g.pop_leading().expect("nonzero");
            let others: Vec<Polynomial<C>> =
                minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, h)| h.clone()).collect();
            let tail = normal_form(&g, &others);
            let lead = Polynomial::monomial(lead.coeff, lead.mono, ord);
            C::normalize(lead.add(&tail))
        })
        .collect();
    let g = GBasis::from_reduced(ctx, nvars, ord, reduced);
    C::record(&g);
    g
}

/// Checks that every S- and GCD-polynomial of pairs of `g` reduces to zero.
/// Returns the offending pair on failure.
pub fn check_certificate<C: GbCoeff>(g: &GBasis<C>) -> std::result::Result<(), (usize, usize)> {
    let els = g.elements();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let s = s_poly(&els[i], &els[j]).expect("nonzero");
            if !normal_form(&s, els).is_zero() {
                return Err((i, j));
            }
            if !C::IS_FIELD {
                let h = gcdpoly_ring(&els[i], &els[j]).expect("nonzero");
                if !normal_form(&h, els).is_zero() {
                    return Err((i, j));
                }
            }
        }
    }
    Ok(())
}
