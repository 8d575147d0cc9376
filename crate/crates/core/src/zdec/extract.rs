use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::fielddec::poly_lcm;
use crate::gb::canonical_cmp;
use crate::ideals::{contract_z, saturation, Ideal, ZIdeal};
use crate::numth::{is_prime, FpElem};
use crate::poly::{canonical_lift, lc_decompose_ring, reduce_mod_p, MonomialOrdering, Polynomial, VarMask, ZPoly};
use crate::{Error, Result};

/// What an extraction did: the separator `s` and the multiplier `h` whose
/// saturations cut out the primary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractTrace {
    pub prime: BigInt,
    pub independent: VarMask,
    pub separator: ZPoly,
    pub multiplier: ZPoly,
}

/// A product `s` of basis elements with `s ∉ P` and `s ∈ Q` for every other
/// prime `Q` of `primes`: for each such `Q` the first element of its
/// reduced basis (in canonical order) that `P` misses.
pub fn separators_z(primes: &[ZIdeal], p: &ZIdeal) -> Result<ZPoly> {
    let n = p.nvars();
    let mut s = Polynomial::one((), n, MonomialOrdering::Dp);
    for q in primes.iter().filter(|q| !q.equals(p)) {
        let pick = q
            .gb()
            .elements()
            .iter()
            .find(|g| !p.contains(g))
            .ok_or_else(|| Error::ComparablePrimes(format!("{} ⊆ {}", q.display(&[]), p.display(&[]))))?;
        s = s.mul(pick);
    }
    Ok(s)
}

pub(crate) fn word_prime(p: &BigInt) -> Result<u64> {
    p.to_u64().filter(|&v| v < 1 << 62).ok_or_else(|| Error::Modulus(p.to_string()))
}

/// `I` reduced modulo `p`, as an ideal of `𝔽ₚ[x]`.
pub fn reduce_ideal(i: &ZIdeal, p: u64) -> Ideal<FpElem> {
    Ideal::new(p, i.nvars(), i.gb().elements().iter().map(|g| reduce_mod_p(g, p)))
}

/// `⟨p, canonical lifts of a basis⟩`
pub fn lift_ideal(i: &Ideal<FpElem>) -> ZIdeal {
    let p = BigInt::from(*i.ctx());
    let pc = Polynomial::constant(p, i.nvars(), MonomialOrdering::Dp);
    Ideal::new((), i.nvars(), std::iter::once(pc).chain(i.gb().elements().iter().map(canonical_lift))).canonical()
}

/// Lifts a primary component over `𝔽ₚ` and its prime to `ℤ[x]`.
pub fn lift_component(q: &Ideal<FpElem>, p: &Ideal<FpElem>) -> (ZIdeal, ZIdeal) {
    (lift_ideal(q), lift_ideal(p))
}

/// The primary component of `I` belonging to the minimal associated prime
/// `P`, where `primes` are all minimal primes of `I` over `p = P ∩ ℤ` and
/// `u` is a maximal independent set of `P` modulo `p`.
///
/// Saturates by a separator `s` of `P` from the other primes, then by the
/// lcm `h` of the `p`-free parts of the `ℤ[u]`-leading coefficients of a
/// strong basis under a block ordering `x∖u ≫ u`.
pub fn extract_z(i: &ZIdeal, primes: &[ZIdeal], p: &ZIdeal, u: VarMask) -> Result<(ZIdeal, ExtractTrace)> {
    let prime = contract_z(p);
    if prime.is_zero() || !is_prime(&prime) {
        return Err(Error::InvalidArgument(format!("{} does not contain a prime number", p.display(&[]))));
    }
    let pmod = reduce_ideal(p, word_prime(&prime)?);
    if pmod.leading_monomials().iter().any(|m| m.support().is_subset(u)) {
        return Err(Error::InvalidArgument("variable set is not independent modulo p".into()));
    }
    let n = i.nvars();
    let s = separators_z(primes, p)?;
    let sat = saturation(i, &s)?;
    let block = MonomialOrdering::block(u.complement(n));
    let mut parts: Vec<ZPoly> = sat
        .gb_with(block)
        .elements()
        .iter()
        .map(|g| lc_decompose_ring(g, u, &prime).map(|(_, a, _)| a.with_ordering(MonomialOrdering::Dp)))
        .collect::<Result<_>>()?;
    parts.sort_by(canonical_cmp);
    parts.dedup();
    let h = parts.iter().fold(Polynomial::one((), n, MonomialOrdering::Dp), |acc, a| poly_lcm(&acc, a));
    let q = saturation(&sat, &h)?.canonical();
    Ok((q, ExtractTrace { prime, independent: u, separator: s, multiplier: h }))
}
