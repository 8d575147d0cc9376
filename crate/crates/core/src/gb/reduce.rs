use super::GbCoeff;
use crate::poly::{Polynomial, Term};

/// Full normal form of `f` modulo `basis` (which must share `f`'s ordering).
///
/// Each term, from the top down, is reduced by the first basis element
/// whose leading term divides it (coefficient included over `ℤ`). Over `ℤ`
/// a term that no leading term divides, but whose monomial some leading
/// monomial divides, has its coefficient reduced into `[0, d)` using the
/// element with the smallest such leading coefficient `d`. With a reduced
/// strong basis this makes the result canonical.
pub fn normal_form<C: GbCoeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    let mut p = f.clone();
    let mut rem: Vec<Term<C>> = Vec::new();
    while let Some(t) = p.leading_term() {
        let full = basis.iter().find_map(|g| {
            let m = t.mono.div(g.lm())?;
            let q = C::exact_quotient(&t.coeff, g.lc())?;
            Some((q, m, g))
        });
        if let Some((q, m, g)) = full {
            p = p.sub_mul_term(&q, &m, g);
            continue;
        }
        if !C::IS_FIELD {
            let partial = basis
                .iter()
                .filter(|g| g.lm().divides(&t.mono))
                .min_by(|a, b| abs_cmp(a.lc(), b.lc()))
                .and_then(|g| Some((C::partial_quotient(&t.coeff, g.lc())?, g)));
            if let Some((q, g)) = partial {
                let m = t.mono.div(g.lm()).expect("divides");
                p = p.sub_mul_term(&q, &m, g);
            }
        }
        rem.push(p.pop_leading().expect("nonzero"));
    }
    Polynomial::from_sorted_terms(f.ctx().clone(), f.nvars(), f.ordering(), rem)
}

/// Orders leading coefficients by absolute value (they are normally positive).
fn abs_cmp<C: GbCoeff>(a: &C, b: &C) -> std::cmp::Ordering {
    let abs = |c: &C| if c.is_negative_coeff() { c.neg() } else { c.clone() };
    abs(a).cmp_canonical(&abs(b))
}
