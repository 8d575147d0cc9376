//! Coefficient-domain maps between `ℤ[x]`, `ℚ[x]` and `𝔽ₚ[x]`, plus the
//! integer-specific helpers (content, sign normalization, exact division).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrdering, Polynomial, Term, VarMask};
use crate::numth::{self, BigRat, FpElem};
use crate::{Error, Result};

pub type ZPoly = Polynomial<BigInt>;
pub type QPoly = Polynomial<BigRat>;
pub type FpPoly = Polynomial<FpElem>;

pub fn reduce_mod_p(f: &ZPoly, p: u64) -> FpPoly {
    let m = BigInt::from(p);
    f.map_coeffs(p, |c| FpElem::from_u64(u64::try_from(c.mod_floor(&m)).expect("residue fits"), p))
}

/// Lifts coefficients to representatives in `[0, p)`.
pub fn canonical_lift(f: &FpPoly) -> ZPoly {
    f.map_coeffs((), |c| BigInt::from(c.value()))
}

pub fn to_rational(f: &ZPoly) -> QPoly {
    f.map_coeffs((), |c| BigRat::from_integer(c.clone()))
}

/// Primitive integer polynomial with positive leading coefficient,
/// proportional to `f` over `ℚ`.
pub fn clear_denominators(f: &QPoly) -> Result<ZPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let den = f.terms().iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));
    let g = f.map_coeffs((), |c| (c.numer() * &den) / c.denom());
    Ok(primitive_part(&g))
}

/// Non-negative gcd of the coefficients (0 for the zero polynomial).
pub fn content(f: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for t in f.terms() {
        g = g.gcd(&t.coeff);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(f: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return f.clone();
    }
    let mut c = content(f);
    if f.lc().is_negative() {
        c = -c;
    }
    if c.is_one() {
        return f.clone();
    }
    div_by_integer(f, &c)
}

/// Flips the sign if the leading coefficient is negative.
pub fn normalize_sign(f: &ZPoly) -> ZPoly {
    if !f.is_zero() && f.lc().is_negative() {
        f.neg()
    } else {
        f.clone()
    }
}

/// Exact coefficient-wise division (caller guarantees divisibility).
pub fn div_by_integer(f: &ZPoly, d: &BigInt) -> ZPoly {
    f.map_coeffs((), |c| {
        debug_assert!((c % d).is_zero());
        c / d
    })
}

/// Exact division in `ℤ[x]`, or `None` if `d ∤ f`.
pub fn div_exact_z(f: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    assert!(!d.is_zero());
    let mut q: Vec<(BigInt, Monomial)> = Vec::new();
    let mut p = f.clone();
    while let Some(t) = p.leading_term() {
        let m = t.mono.div(d.lm())?;
        let (c, r) = t.coeff.div_rem(d.lc());
        if !r.is_zero() {
            return None;
        }
        p = p.sub_mul_term(&c, &m, d);
        q.push((c, m));
    }
    Some(Polynomial::from_terms((), f.nvars(), f.ordering(), q))
}

/// Leading part of `f` with respect to the variables outside `u`,
/// for `f` stored under a block ordering `x∖u ≫ u`:
/// `LT_{ℤ[u][x∖u]}(f) = p^ν·a·(x∖u)^β` with `p ∤ content(a)`.
///
/// Returns `(ν, a, β)`; `a` lives in the same ring as `f` but only
/// involves the variables of `u`.
pub fn lc_decompose_ring(f: &ZPoly, u: VarMask, p: &BigInt) -> Result<(u32, ZPoly, Monomial)> {
    let lt = f.try_leading_term()?;
    let rest = u.complement(f.nvars());
    let beta = lt.mono.restrict(rest);
    let lead = f
        .terms()
        .iter()
        .filter(|t| t.mono.restrict(rest) == beta)
        .map(|t| (t.coeff.clone(), t.mono.restrict(u)));
    let a = Polynomial::from_terms((), f.nvars(), f.ordering(), lead);
    let nu = numth::valuation(&content(&a), p);
    let a = div_by_integer(&a, &p.pow(nu));
    Ok((nu, a, beta))
}

/// Leading coefficient of `f` in `ℤ[u][x∖u]` (or `K[u][x∖u]`): the sum of
/// the terms sharing the leading monomial's `x∖u` part, with that part removed.
pub fn leading_coefficient_in<C: super::Coeff>(f: &Polynomial<C>, u: VarMask) -> Polynomial<C> {
    let Some(lt) = f.leading_term() else {
        return f.clone();
    };
    let rest = u.complement(f.nvars());
    let beta = lt.mono.restrict(rest);
    let lead = f
        .terms()
        .iter()
        .filter(|t| t.mono.restrict(rest) == beta)
        .map(|t| (t.coeff.clone(), t.mono.restrict(u)));
    Polynomial::from_terms(f.ctx().clone(), f.nvars(), f.ordering(), lead)
}

/// Polynomial from integer coefficients and exponent vectors, for tests
/// and literals.
pub fn zpoly(nvars: usize, ord: MonomialOrdering, terms: &[(i64, &[u32])]) -> ZPoly {
    Polynomial::from_terms(
        (),
        nvars,
        ord,
        terms.iter().map(|(c, e)| (BigInt::from(*c), Monomial::from_exponents(e))),
    )
}

/// `(coefficient, exponents)` pairs, the inverse of [`zpoly`] up to order.
pub fn int_terms(f: &ZPoly) -> Vec<(BigInt, Vec<u32>)> {
    f.terms().iter().map(|Term { coeff, mono }| (coeff.clone(), mono.exponents().to_vec())).collect()
}
