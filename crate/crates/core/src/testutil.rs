//! Parsing shortcuts shared by unit tests.

use num_bigint::BigInt;
use proptest::prelude::*;

use crate::numth::{BigRat, FpElem};
use crate::poly::{is_integral, parse_polynomial, Monomial, MonomialOrdering, Polynomial, QPoly, ZPoly};

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn q(src: &str, vars: &[&str]) -> QPoly {
    parse_polynomial(src, &names(vars), MonomialOrdering::Dp).unwrap()
}

pub fn z(src: &str, vars: &[&str]) -> ZPoly {
    let f = q(src, vars);
    assert!(is_integral(&f), "{src} has non-integer coefficients");
    f.map_coeffs((), |c: &BigRat| c.to_integer())
}

pub fn zs(srcs: &[&str], vars: &[&str]) -> Vec<ZPoly> {
    srcs.iter().map(|s| z(s, vars)).collect()
}

pub fn qs(srcs: &[&str], vars: &[&str]) -> Vec<QPoly> {
    srcs.iter().map(|s| q(s, vars)).collect()
}

pub fn fp(src: &str, vars: &[&str], p: u64) -> Polynomial<FpElem> {
    crate::poly::reduce_mod_p(&z(src, vars), p)
}

pub fn arb_zpoly(nvars: usize, max_deg: u32, max_coeff: i64, max_terms: usize) -> impl Strategy<Value = ZPoly> {
    let mono = prop::collection::vec(0..=max_deg, nvars).prop_filter_map("degree bound", move |e| {
        (e.iter().sum::<u32>() <= max_deg).then(|| Monomial::from_exponents(&e))
    });
    prop::collection::vec((-max_coeff..=max_coeff, mono), 1..=max_terms).prop_map(move |ts| {
        Polynomial::from_terms((), nvars, MonomialOrdering::Dp, ts.into_iter().map(|(c, m)| (BigInt::from(c), m)))
    })
}
