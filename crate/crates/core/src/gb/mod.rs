//! Gröbner bases over fields and strong Gröbner bases over `ℤ`.

mod buchberger;
mod coeff;
pub mod recorder;
mod reduce;

use std::cmp::Ordering;

pub use buchberger::{buchberger, buchberger_in, check_certificate, gcdpoly_ring, spoly, spoly_ring};
pub use coeff::GbCoeff;
pub use reduce::normal_form;


use crate::poly::{Coeff, MonomialOrdering, Polynomial, VarMask};
use crate::{Error, Result};

/// A reduced Gröbner basis (strong over `ℤ`), sorted by leading monomial
/// ascending, then leading coefficient, then the full term list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBasis<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    ord: MonomialOrdering,
    elements: Vec<Polynomial<C>>,
}

impl<C: GbCoeff> GBasis<C> {
    pub(crate) fn from_reduced(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering, mut elements: Vec<Polynomial<C>>) -> Self {
        elements.sort_by(|a, b| canonical_cmp(a, b));
        GBasis { ctx, nvars, ord, elements }
    }

    pub fn elements(&self) -> &[Polynomial<C>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<C>> {
        self.elements
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ord
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && C::is_unit(g.lc()))
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        normal_form(&f.with_ordering(self.ord), &self.elements)
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Basis elements involving only `keep`. Requires an ordering in which
    /// the other variables dominate, so the result generates the
    /// elimination ideal (and is again a strong basis of it).
    pub fn intersect_with_subring(&self, keep: VarMask) -> Result<Vec<Polynomial<C>>> {
        let drop = keep.complement(self.nvars);
        if !self.ord.eliminates(drop) {
            return Err(Error::NotEliminating);
        }
        Ok(self.elements.iter().filter(|g| g.uses_only(keep)).cloned().collect())
    }
}

/// Leading monomial ascending, then leading coefficient, then terms.
pub fn canonical_cmp<C: Coeff>(a: &Polynomial<C>, b: &Polynomial<C>) -> Ordering {
    match (a.leading_term(), b.leading_term()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => a
            .ordering()
            .compare(&x.mono, &y.mono)
            .then_with(|| x.coeff.cmp_canonical(&y.coeff))
            .then_with(|| a.cmp_canonical(b)),
    }
}

/// Exact quotient `f / d`, or `None` if `d ∤ f` in the polynomial ring.
pub fn div_exact<C: GbCoeff>(f: &Polynomial<C>, d: &Polynomial<C>) -> Option<Polynomial<C>> {
    assert!(!d.is_zero(), "division by zero polynomial");
    let d = d.with_ordering(f.ordering());
    let mut q = Polynomial::zero(f.ctx().clone(), f.nvars(), f.ordering());
    let mut p = f.clone();
    while let Some(t) = p.leading_term() {
        let m = t.mono.div(d.lm())?;
        let c = C::exact_quotient(&t.coeff, d.lc())?;
        p = p.sub_mul_term(&c, &m, &d);
        q = q.add(&Polynomial::monomial(c, m, f.ordering()));
    }
    Some(q)
}

/// `true` if `LT(a) | LT(b)`, including coefficient divisibility over `ℤ`.
pub fn lt_divides<C: GbCoeff>(a: &Polynomial<C>, b: &Polynomial<C>) -> bool {
    a.lm().divides(b.lm()) && C::divides(a.lc(), b.lc())
}
