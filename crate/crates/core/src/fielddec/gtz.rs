use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{factor, FactorField};
use crate::gb::GBasis;
use crate::ideals::{eliminate_last, intersect_all, max_independent_sets, saturate, saturation, Ideal};
use crate::poly::{leading_coefficient_in, MonomialOrdering, Polynomial, VarMask};
use crate::{Error, Result};

const DP: MonomialOrdering = MonomialOrdering::Dp;
const MAX_POSITION_ATTEMPTS: usize = 10;

/// A primary ideal `q` with its associated prime `p = √q`.
#[derive(Clone, Debug)]
pub struct FieldComponent<F: FactorField> {
    pub q: Ideal<F>,
    pub p: Ideal<F>,
}

/// Irredundant primary decomposition of a proper ideal over `ℚ` or `𝔽ₚ`.
///
/// Works by reduction to dimension zero over `K(u)` for a maximal
/// independent set `u`, splitting there along the factors of a minimal
/// polynomial (after a random linear coordinate change if the last variable
/// is not in general position), contracting back, and recursing on the
/// part that the contraction misses. Components are sorted by prime, then
/// primary ideal.
///
/// Inseparable residue field extensions in characteristic `p` are not
/// handled and may surface as [`Error::GeneralPosition`].
pub fn primdec_field<F: FactorField>(ideal: &Ideal<F>, seed: u64) -> Result<Vec<FieldComponent<F>>> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal("primary decomposition of the unit ideal".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    decompose(&ideal.canonical(), &mut rng, &mut raw)?;

    // one primary ideal per prime
    let mut merged: Vec<FieldComponent<F>> = Vec::new();
    for c in raw {
        match merged.iter_mut().find(|m| m.p.equals(&c.p)) {
            Some(m) => m.q = crate::ideals::intersect(&m.q, &c.q).canonical(),
            None => merged.push(c),
        }
    }
    let mut comps = remove_redundant(merged)?;
    comps.sort_by(|a, b| a.p.cmp_canonical(&b.p).then_with(|| a.q.cmp_canonical(&b.q)));
    Ok(comps)
}

/// Primary decomposition of a zero-dimensional proper ideal.
pub fn zerodim_primdec<F: FactorField>(ideal: &Ideal<F>, seed: u64) -> Result<Vec<FieldComponent<F>>> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal("primary decomposition of the unit ideal".into()));
    }
    let d = crate::ideals::dimension(ideal)?;
    if d != 0 {
        return Err(Error::NotZeroDimensional(d));
    }
    primdec_field(ideal, seed)
}

/// The minimal associated primes, sorted.
pub fn min_ass_field<F: FactorField>(ideal: &Ideal<F>, seed: u64) -> Result<Vec<Ideal<F>>> {
    let primes: Vec<Ideal<F>> = primdec_field(ideal, seed)?.into_iter().map(|c| c.p).collect();
    let minimal = primes
        .iter()
        .filter(|p| !primes.iter().any(|o| !o.equals(p) && p.contains_ideal(o)))
        .cloned()
        .collect();
    Ok(minimal)
}

fn remove_redundant<F: FactorField>(comps: Vec<FieldComponent<F>>) -> Result<Vec<FieldComponent<F>>> {
    let mut keyed: Vec<(usize, FieldComponent<F>)> =
        comps.into_iter().map(|c| Ok((crate::ideals::dimension(&c.p)?, c))).collect::<Result<_>>()?;
    keyed.sort_by_key(|(d, _)| *d);
    let mut comps: Vec<FieldComponent<F>> = keyed.into_iter().map(|(_, c)| c).collect();
    // Qᵢ is redundant iff the other Qⱼ with Pⱼ ⊆ Pᵢ meet inside it
    let mut i = 0;
    while i < comps.len() {
        let pi = &comps[i].p;
        let below = comps.iter().enumerate().filter(|&(j, c)| j != i && pi.contains_ideal(&c.p)).map(|(_, c)| &c.q);
        if intersect_all(below).is_some_and(|meet| comps[i].q.contains_ideal(&meet)) {
            comps.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(comps)
}

fn decompose<F: FactorField>(ideal: &Ideal<F>, rng: &mut ChaCha8Rng, out: &mut Vec<FieldComponent<F>>) -> Result<()> {
    if ideal.is_unit() {
        return Ok(());
    }
    let n = ideal.nvars();
    if ideal.is_zero() {
        out.push(FieldComponent { q: ideal.clone(), p: ideal.clone() });
        return Ok(());
    }
    // over 𝔽ₚ(u) the residue fields may be inseparable for one choice of
    // u and fine for another
    let mut failure = None;
    for u in max_independent_sets(ideal)? {
        let pieces = match split_generic(ideal, u, rng) {
            Ok(pieces) => pieces,
            Err(e @ Error::GeneralPosition { .. }) => {
                failure = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        for (j, r) in pieces {
            let q = contract(&j, u)?;
            let p = contract(&r, u)?;
            out.push(FieldComponent { q: q.canonical(), p: p.canonical() });
        }

        // I = (I : h^∞) ∩ ⟨I, h^m⟩, and the first part is what was just split
        let w = u.complement(n);
        let h = lc_product(&ideal.gb_with(MonomialOrdering::block(w)), u);
        let (_, m) = saturate(ideal, &h)?;
        if m > 0 {
            let rest = ideal.with_gens([h.pow(m)]).canonical();
            decompose(&rest, rng, out)?;
        }
        return Ok(());
    }
    Err(failure.expect("a proper ideal has an independent set"))
}

/// `J K(u)[x] ∩ K[x]` by saturating with the `K[u]`-leading coefficients
/// of a block basis.
fn contract<F: FactorField>(j: &Ideal<F>, u: VarMask) -> Result<Ideal<F>> {
    let w = u.complement(j.nvars());
    let h = lc_product(&j.gb_with(MonomialOrdering::block(w)), u);
    saturation(j, &h)
}

/// Product of the distinct monic `K[u]`-leading coefficients.
fn lc_product<F: FactorField>(basis: &GBasis<F>, u: VarMask) -> Polynomial<F> {
    let mut lcs: Vec<Polynomial<F>> =
        basis.elements().iter().map(|g| leading_coefficient_in(g, u).with_ordering(DP).monic()).collect();
    lcs.sort_by(crate::gb::canonical_cmp);
    lcs.dedup();
    let one = Polynomial::one(basis.ctx().clone(), basis.nvars(), DP);
    lcs.iter().fold(one, |acc, c| acc.mul(c))
}

/// Pairs `(Jᵢ, Rᵢ)` with `I K(u)[w] = ⋂ Jᵢ K(u)[w]`, each `Jᵢ K(u)[w]`
/// primary with maximal radical `Rᵢ K(u)[w]`.
///
/// The splitting element is the last variable of `w`. When that fails the
/// shape test, a new last variable `t` is adjoined with `t = ℓ(w)` for a
/// random `ℓ`, and `t` is eliminated from the pieces afterwards (the
/// quotient rings are isomorphic, so primary and prime pieces stay so).
/// `ℓ` is linear with coefficients in `{−B, …, B}`, `B` doubling per try;
/// from the fourth try on it gets random quadratic terms too, since over a
/// small prime field no linear form may separate the points.
fn split_generic<F: FactorField>(
    ideal: &Ideal<F>,
    u: VarMask,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Ideal<F>, Ideal<F>)>> {
    if u.is_empty() {
        return super::zerodim::split_zero_dim(ideal, rng);
    }
    let n = ideal.nvars();
    let w = u.complement(n);
    let ws: Vec<usize> = w.indices().collect();
    let ctx = ideal.ctx().clone();

    let mut bound: i64 = 1;
    for attempt in 0..=MAX_POSITION_ATTEMPTS {
        let (moved, wm, last) = if attempt == 0 {
            (ideal.clone(), w, *ws.last().expect("w is nonempty for a nonzero proper ideal"))
        } else {
            let ord = MonomialOrdering::elimination(VarMask::single(n));
            let var = |v: usize| Polynomial::var(v, ctx.clone(), n + 1, ord);
            let mut coeff = || F::from_i64(rng.gen_range(-bound..=bound), &ctx);
            let mut l = var(*ws.last().unwrap());
            for &wj in &ws[..ws.len() - 1] {
                l = l.add(&var(wj).scale(&coeff()));
            }
            if attempt >= 4 {
                for (a, &wa) in ws.iter().enumerate() {
                    for &wb in &ws[a..] {
                        l = l.add(&var(wa).mul(&var(wb)).scale(&coeff()));
                    }
                }
            }
            bound *= 2;
            let tie = var(n).sub(&l);
            let gens = ideal.gens().iter().map(|g| g.extend_vars(1, ord)).chain([tie]);
            (Ideal::new(ctx.clone(), n + 1, gens), w.with(n), n)
        };
        let nv = moved.nvars();
        let others: Vec<usize> = wm.indices().filter(|&v| v != last).collect();

        let g = min_poly(&moved, wm, last);
        let fl = factor(&g, rng.gen())?;
        let mut pieces = Vec::new();
        let mut generic = true;
        for (gi, ei) in fl.factors.iter().filter(|(f, _)| f.degree_in(last) > 0) {
            let j = moved.with_gens([gi.pow(*ei)]);
            let mut radical_gens = vec![gi.clone()];
            for &wj in &others {
                let mj = min_poly(&j, wm, wj);
                let sq = factor(&mj, rng.gen())?
                    .factors
                    .iter()
                    .filter(|(f, _)| f.degree_in(wj) > 0)
                    .fold(Polynomial::one(ctx.clone(), nv, DP), |acc, (f, _)| acc.mul(f));
                radical_gens.push(sq);
            }
            let r = j.with_gens(radical_gens);
            if !in_shape_position(&r, wm, last) {
                generic = false;
                break;
            }
            pieces.push((j, r));
        }
        if generic {
            if nv == n {
                return Ok(pieces);
            }
            let drop_t = |i: &Ideal<F>| Ideal::new(ctx.clone(), n, eliminate_last(&ctx, n, i.gb().elements().to_vec()));
            return Ok(pieces.iter().map(|(j, r)| (drop_t(j), drop_t(r))).collect());
        }
    }
    Err(Error::GeneralPosition { attempts: MAX_POSITION_ATTEMPTS, ideal: format!("{}", ideal.display(&[])) })
}

/// Generator (up to a unit of `K(u)`) of `I K(u)[w] ∩ K(u)[var]`, taken
/// from a basis that is lex in `w` with `var` moved to the last place.
fn min_poly<F: FactorField>(ideal: &Ideal<F>, w: VarMask, var: usize) -> Polynomial<F> {
    let n = ideal.nvars();
    let last = w.indices().last().expect("nonempty");
    let perm: Vec<usize> = (0..n).map(|i| if i == var { last } else if i == last { var } else { i }).collect();
    let ord = MonomialOrdering::block_lex(w);
    let swapped = Ideal::new(ideal.ctx().clone(), n, ideal.gens().iter().map(|g| g.permute_vars(&perm, DP)));
    let basis = swapped.gb_with(ord);
    let others = w.minus(VarMask::single(last));
    let g = basis
        .elements()
        .iter()
        .filter(|g| g.support().minus(others) == g.support())
        .min_by_key(|g| g.degree_in(last))
        .expect("zero-dimensional over K(u)");
    g.permute_vars(&perm, DP)
}

/// Whether each `w` variable other than `last` is a leading `w`-monomial
/// of the lex-in-`w` basis, i.e. the basis has the shape
/// `{wⱼ − φⱼ(last), g(last)}` over `K(u)`.
fn in_shape_position<F: FactorField>(r: &Ideal<F>, w: VarMask, last: usize) -> bool {
    let basis = r.gb_with(MonomialOrdering::block_lex(w));
    if basis.is_unit() {
        return false;
    }
    let n = r.nvars();
    w.indices().filter(|&v| v != last).all(|v| {
        basis.elements().iter().any(|g| g.lm().restrict(w) == crate::poly::Monomial::var(v, n))
    })
}
