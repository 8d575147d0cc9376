use std::cmp::Ordering;

use num_traits::Zero;

use super::extract::{reduce_ideal, word_prime};
use super::Component;
use crate::ideals::{contract_z, dimension, intersect, intersect_all, power_generators, quotient_ideal, Ideal, ZIdeal};
use crate::numth::BigRat;
use crate::poly::to_rational;
use crate::{Error, Result};

const MAX_REMAINDER_EXPONENT: u32 = 64;

/// Smallest `m ≥ 1` with `J ∩ (I + ⟨F^{(m)}⟩) = I`, where `F` is the
/// reduced basis of `I : J` and `F^{(m)}` its element-wise `m`-th powers.
/// Returns `m` and `I + ⟨F^{(m)}⟩`.
pub fn remainder_split(i: &ZIdeal, j: &ZIdeal) -> Result<(u32, ZIdeal)> {
    if !j.contains_ideal(i) {
        return Err(Error::InvalidArgument("remainder split needs I ⊆ J".into()));
    }
    let f = quotient_ideal(i, j)?.gb().elements().to_vec();
    for m in 1..=MAX_REMAINDER_EXPONENT {
        let rem = i.with_gens(power_generators(&f, m)?);
        if intersect(j, &rem).equals(i) {
            return Ok((m, rem.canonical()));
        }
    }
    Err(Error::RecursionLimit { limit: MAX_REMAINDER_EXPONENT as usize, ideal: format!("{}", i.display(&[])) })
}

/// Krull dimension of `ℤ[x]/P` for a prime `P`.
pub fn dimension_z(p: &ZIdeal) -> Result<usize> {
    if p.is_unit() {
        return Err(Error::UnitIdeal("dimension of the unit ideal".into()));
    }
    let c = contract_z(p);
    if c.is_zero() {
        let rational = Ideal::<BigRat>::new((), p.nvars(), p.gb().elements().iter().map(to_rational));
        Ok(dimension(&rational)? + 1)
    } else {
        dimension(&reduce_ideal(p, word_prime(&c)?))
    }
}

/// Canonical component order: prime first, then primary ideal.
pub(crate) fn cmp_components(a: &Component, b: &Component) -> Ordering {
    a.p.cmp_canonical(&b.p).then_with(|| a.q.cmp_canonical(&b.q))
}

/// One component per prime: primary ideals with equal radicals are
/// intersected (the result is again primary).
pub fn merge_same_prime(comps: Vec<Component>) -> Vec<Component> {
    let mut out: Vec<Component> = Vec::new();
    for c in comps {
        match out.iter_mut().find(|o| o.p.equals(&c.p)) {
            Some(o) => o.q = intersect(&o.q, &c.q).canonical(),
            None => out.push(c),
        }
    }
    out
}

/// Drops components whose removal leaves `keep ∩ ⋂ Q` unchanged. They
/// are tried by decreasing dimension of the prime, then canonical order;
/// the result is sorted canonically.
///
/// `Qₖ` is redundant iff the intersection of the other `Qⱼ` with
/// `Pⱼ ⊆ Pₖ` (and of `keep`, if `keep ⊆ Pₖ`) lies in `Qₖ`: everything else
/// contains an element outside `Pₖ`, which is a non-zero-divisor modulo the
/// `Pₖ`-primary `Qₖ`.
pub fn remove_redundant(comps: Vec<Component>, keep: &ZIdeal) -> Result<Vec<Component>> {
    let mut keyed = comps.into_iter().map(|c| Ok((dimension_z(&c.p)?, c))).collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|(da, a), (db, b)| db.cmp(da).then_with(|| cmp_components(a, b)));
    let mut comps: Vec<Component> = keyed.into_iter().map(|(_, c)| c).collect();
    let mut k = 0;
    while k < comps.len() {
        let pk = &comps[k].p;
        let below = comps.iter().enumerate().filter(|&(j, c)| j != k && pk.contains_ideal(&c.p)).map(|(_, c)| &c.q);
        let keep_below = (!keep.is_unit() && pk.contains_ideal(keep)).then_some(keep);
        let redundant = match intersect_all(below.chain(keep_below)) {
            Some(meet) => comps[k].q.contains_ideal(&meet),
            None => false,
        };
        if redundant {
            comps.remove(k);
        } else {
            k += 1;
        }
    }
    comps.sort_by(cmp_components);
    Ok(comps)
}
