use std::cmp::Ordering;
use std::fmt;
use std::ops;

use super::{Coeff, Field, Monomial, MonomialOrdering, VarMask};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<C> {
    pub coeff: C,
    pub mono: Monomial,
}

/// Sparse distributed polynomial. Terms are kept strictly decreasing under
/// `ord` with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    ord: MonomialOrdering,
    terms: Vec<Term<C>>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering) -> Self {
        Polynomial { ctx, nvars, ord, terms: Vec::new() }
    }

    pub fn constant(c: C, nvars: usize, ord: MonomialOrdering) -> Self {
        Self::monomial(c, Monomial::one(nvars), ord)
    }

    pub fn one(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering) -> Self {
        Self::constant(C::one_in(&ctx), nvars, ord)
    }

    pub fn from_int(n: i64, ctx: C::Ctx, nvars: usize, ord: MonomialOrdering) -> Self {
        Self::constant(C::from_i64(n, &ctx), nvars, ord)
    }

    pub fn var(index: usize, ctx: C::Ctx, nvars: usize, ord: MonomialOrdering) -> Self {
        Self::monomial(C::one_in(&ctx), Monomial::var(index, nvars), ord)
    }

    pub fn monomial(c: C, mono: Monomial, ord: MonomialOrdering) -> Self {
        let ctx = c.ctx();
        let nvars = mono.nvars();
        let terms = if c.is_zero_coeff() { Vec::new() } else { vec![Term { coeff: c, mono }] };
        Polynomial { ctx, nvars, ord, terms }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms<I>(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering, terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Monomial)>,
    {
        let mut v: Vec<Term<C>> = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero_coeff())
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        v.sort_by(|a, b| ord.compare(&b.mono, &a.mono));
        let mut out: Vec<Term<C>> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff.add_assign(&t.coeff),
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero_coeff()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero_coeff()) {
            out.pop();
        }
        Polynomial { ctx, nvars, ord, terms: out }
    }

    /// Trusts the caller that `terms` are sorted and nonzero.
    pub(crate) fn from_sorted_terms(ctx: C::Ctx, nvars: usize, ord: MonomialOrdering, terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero_coeff()));
        debug_assert!(terms.windows(2).all(|w| ord.compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ctx, nvars, ord, terms }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ord
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<Term<C>> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one_coeff()
    }

    /// The constant value if the polynomial is constant (zero gives `0`).
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero_in(&self.ctx)),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn try_leading_term(&self) -> Result<&Term<C>> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    /// Panics on the zero polynomial.
    pub fn lc(&self) -> &C {
        &self.terms[0].coeff
    }

    /// Panics on the zero polynomial.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.mono.degree_in(var)).max().unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> VarMask {
        self.terms.iter().fold(VarMask::EMPTY, |m, t| m.union(t.mono.support()))
    }

    pub fn uses_only(&self, vars: VarMask) -> bool {
        self.support().is_subset(vars)
    }

    pub fn with_ordering(&self, ord: MonomialOrdering) -> Self {
        if ord == self.ord {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ord.compare(&b.mono, &a.mono));
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, ord, terms }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch { left: self.nvars, right: other.nvars });
        }
        if self.ctx != other.ctx {
            return Err(Error::DomainMismatch);
        }
        if self.ord != other.ord {
            return Err(Error::OrderingMismatch);
        }
        Ok(())
    }

    fn same_shape(&self, terms: Vec<Term<C>>) -> Self {
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, ord: self.ord, terms }
    }

    /// `self + sign·c·m·g`, merged in one pass. `c = None` means 1.
    fn merge_scaled(&self, g: &Self, c: Option<&C>, m: Option<&Monomial>, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, g.nvars);
        debug_assert_eq!(self.ord, g.ord);
        if c.is_some_and(|c| c.is_zero_coeff()) {
            return self.clone();
        }
        let ord = self.ord;
        let scale = |t: &Term<C>| -> Term<C> {
            let mut coeff = match c {
                Some(c) => c.mul(&t.coeff),
                None => t.coeff.clone(),
            };
            if negate {
                coeff = coeff.neg();
            }
            let mono = match m {
                Some(m) => t.mono.mul(m),
                None => t.mono.clone(),
            };
            Term { coeff, mono }
        };
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let mut pending: Option<Term<C>> = g.terms.first().map(scale);
        while let Some(bt) = pending.as_ref() {
            if i < a.len() {
                match ord.compare(&a[i].mono, &bt.mono) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = a[i].coeff.add(&bt.coeff);
                        if !s.is_zero_coeff() {
                            out.push(Term { coeff: s, mono: bt.mono.clone() });
                        }
                        i += 1;
                    }
                    Ordering::Less => out.push(pending.take().unwrap()),
                }
            } else {
                out.push(pending.take().unwrap());
            }
            j += 1;
            pending = g.terms.get(j).map(scale);
        }
        out.extend_from_slice(&a[i..]);
        self.same_shape(out)
    }

    /// `self − c·m·g`
    pub fn sub_mul_term(&self, c: &C, m: &Monomial, g: &Self) -> Self {
        self.merge_scaled(g, Some(c), Some(m), true)
    }

    /// `self + c·m·g`
    pub fn add_mul_term(&self, c: &C, m: &Monomial, g: &Self) -> Self {
        self.merge_scaled(g, Some(c), Some(m), false)
    }

    pub fn add(&self, g: &Self) -> Self {
        self.merge_scaled(g, None, None, false)
    }

    pub fn sub(&self, g: &Self) -> Self {
        self.merge_scaled(g, None, None, true)
    }

    pub fn neg(&self) -> Self {
        self.same_shape(self.terms.iter().map(|t| Term { coeff: t.coeff.neg(), mono: t.mono.clone() }).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero_coeff() {
            return self.same_shape(Vec::new());
        }
        self.same_shape(
            self.terms
                .iter()
                .filter_map(|t| {
                    let coeff = t.coeff.mul(c);
                    (!coeff.is_zero_coeff()).then(|| Term { coeff, mono: t.mono.clone() })
                })
                .collect(),
        )
    }

    /// `c·m·self`
    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        let mut p = self.scale(c);
        for t in &mut p.terms {
            t.mono = t.mono.mul(m);
        }
        p
    }

    pub fn mul(&self, g: &Self) -> Self {
        debug_assert_eq!(self.nvars, g.nvars);
        if self.is_zero() || g.is_zero() {
            return self.same_shape(Vec::new());
        }
        if self.terms.len() == 1 {
            return g.mul_term(&self.terms[0].coeff, &self.terms[0].mono);
        }
        if g.terms.len() == 1 {
            return self.mul_term(&g.terms[0].coeff, &g.terms[0].mono);
        }
        let products = self
            .terms
            .iter()
            .flat_map(|a| g.terms.iter().map(move |b| (a.coeff.mul(&b.coeff), a.mono.mul(&b.mono))));
        Self::from_terms(self.ctx.clone(), self.nvars, self.ord, products)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.ctx.clone(), self.nvars, self.ord);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let coeff = f(&t.coeff);
                (!coeff.is_zero_coeff()).then(|| Term { coeff, mono: t.mono.clone() })
            })
            .collect();
        Polynomial { ctx, nvars: self.nvars, ord: self.ord, terms }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mono.degree_in(var);
            if e == 0 {
                return None;
            }
            let mut exps = t.mono.exponents().to_vec();
            exps[var] -= 1;
            Some((t.coeff.mul(&C::from_i64(e as i64, &self.ctx)), Monomial::from_exponents(&exps)))
        });
        Self::from_terms(self.ctx.clone(), self.nvars, self.ord, terms)
    }

    /// Appends `extra` variables, placed after the existing ones, and
    /// switches to `ord`.
    pub fn extend_vars(&self, extra: usize, ord: MonomialOrdering) -> Self {
        let terms = self.terms.iter().map(|t| (t.coeff.clone(), t.mono.extend(extra)));
        Self::from_terms(self.ctx.clone(), self.nvars + extra, ord, terms)
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize, ord: MonomialOrdering) -> Self {
        debug_assert!(self.uses_only(VarMask::all(nvars)));
        let terms = self.terms.iter().map(|t| (t.coeff.clone(), t.mono.truncate(nvars)));
        Self::from_terms(self.ctx.clone(), nvars, ord, terms)
    }

    /// Variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute_vars(&self, perm: &[usize], ord: MonomialOrdering) -> Self {
        debug_assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|t| (t.coeff.clone(), t.mono.permute(perm)));
        Self::from_terms(self.ctx.clone(), self.nvars, ord, terms)
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ring,
    /// which may differ from `self`'s.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Polynomial<C> {
        assert_eq!(images.len(), self.nvars);
        let first = images.first().expect("at least one variable");
        let (ctx, n, ord) = (first.ctx.clone(), first.nvars, first.ord);
        let mut acc = Polynomial::zero(ctx.clone(), n, ord);
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial<C>>> = images.iter().map(|g| vec![Polynomial::one(ctx.clone(), n, ord), g.clone()]).collect();
        for t in &self.terms {
            let mut prod = Polynomial::constant(t.coeff.clone(), n, ord);
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                prod = prod.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Coefficient of variable `var` viewed as the main variable:
    /// `self = Σ_k coeffs[k]·var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(C, Monomial)>> = vec![Vec::new(); deg + 1];
        for t in &self.terms {
            let e = t.mono.degree_in(var) as usize;
            let mut exps = t.mono.exponents().to_vec();
            exps[var] = 0;
            buckets[e].push((t.coeff.clone(), Monomial::from_exponents(&exps)));
        }
        buckets.into_iter().map(|b| Self::from_terms(self.ctx.clone(), self.nvars, self.ord, b)).collect()
    }

    /// Canonical comparison, independent of the ordering the terms are
    /// stored under: compares sorted term lists under `ord`.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let ord = self.ord;
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = ord.compare(&a.mono, &b.mono).then_with(|| a.coeff.cmp_canonical(&b.coeff));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, names: Some(names) }
    }
}

impl<C: Field> Polynomial<C> {
    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff.is_one_coeff() => self.clone(),
            Some(t) => self.scale(&t.coeff.inv()),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_single(d);
        r.is_zero().then_some(q)
    }

    /// Multivariate division by one polynomial (leading-term reduction
    /// anywhere in the dividend). Returns `(q, r)` with `self = q·d + r`.
    pub fn div_rem_single(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let inv = d.lc().inv();
        let mut q = self.same_shape(Vec::new());
        let mut r_terms = Vec::new();
        let mut p = self.clone();
        while let Some(t) = p.terms.first().cloned() {
            match t.mono.div(d.lm()) {
                Some(m) => {
                    let c = t.coeff.mul(&inv);
                    p = p.sub_mul_term(&c, &m, d);
                    q = q.add(&Polynomial::from_sorted_terms(self.ctx.clone(), self.nvars, self.ord, vec![Term { coeff: c, mono: m }]));
                }
                None => {
                    r_terms.push(t);
                    p.terms.remove(0);
                }
            }
        }
        (q, self.same_shape(r_terms))
    }
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars || self.ctx != other.ctx || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.ord == other.ord {
            self.terms == other.terms
        } else {
            self.terms == other.with_ordering(self.ord).terms
        }
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<C: Coeff> ops::$trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                Polynomial::$inner(self, rhs)
            }
        }
        impl<C: Coeff> ops::$trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                Polynomial::$inner(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl<C: Coeff> ops::Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(self)
    }
}

impl<C: Coeff> ops::Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(&self)
    }
}

/// Renders as `3*x^2*y - 7`. Without names, variables print as `x1, x2, …`.
pub struct PolyDisplay<'a, C: Coeff> {
    poly: &'a Polynomial<C>,
    names: Option<&'a [String]>,
}

impl<'a, C: Coeff> PolyDisplay<'a, C> {
    pub fn from_parts(poly: &'a Polynomial<C>, names: &'a [String]) -> Self {
        PolyDisplay { poly, names: Some(names) }
    }
}

impl<C: Coeff> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.poly;
        if poly.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in poly.terms.iter().enumerate() {
            let neg = t.coeff.is_negative_coeff();
            let c = if neg { t.coeff.neg() } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if !c.is_one_coeff() || t.mono.is_one() {
                write!(f, "{c}")?;
                first = false;
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match self.names.and_then(|n| n.get(i)) {
                    Some(name) => f.write_str(name)?,
                    None => write!(f, "x{}", i + 1)?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: None }.fmt(f)
    }
}
