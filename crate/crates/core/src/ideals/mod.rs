//! Ideals in `R[x₁,…,xₙ]` for `R = ℤ` or a field: membership, equality,
//! intersection, quotients, saturation and contraction.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::gb::{buchberger_in, div_exact, GBasis, GbCoeff};
use crate::numth;
use crate::poly::{Monomial, MonomialOrdering, PolyDisplay, Polynomial, VarMask};
use crate::{Error, Result};

const DP: MonomialOrdering = MonomialOrdering::Dp;

/// An ideal given by generators, with its degrevlex basis computed on
/// first use. Equality compares reduced bases, so it is ideal equality.
#[derive(Clone, Debug)]
pub struct Ideal<C: GbCoeff> {
    ctx: C::Ctx,
    nvars: usize,
    gens: Vec<Polynomial<C>>,
    gb: OnceLock<GBasis<C>>,
}

pub type ZIdeal = Ideal<BigInt>;

impl<C: GbCoeff> Ideal<C> {
    /// Zero generators are dropped; generators are stored under degrevlex.
    pub fn new(ctx: C::Ctx, nvars: usize, gens: impl IntoIterator<Item = Polynomial<C>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.with_ordering(DP)).collect::<Vec<_>>();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars && *g.ctx() == ctx));
        Ideal { ctx, nvars, gens, gb: OnceLock::new() }
    }

    /// Ideal generated by a nonempty list of polynomials.
    pub fn from_gens(gens: Vec<Polynomial<C>>) -> Self {
        let first = gens.first().expect("nonempty generator list");
        Self::new(first.ctx().clone(), first.nvars(), gens)
    }

    pub fn zero(ctx: C::Ctx, nvars: usize) -> Self {
        Self::new(ctx, nvars, [])
    }

    pub fn unit(ctx: C::Ctx, nvars: usize) -> Self {
        let one = Polynomial::one(ctx.clone(), nvars, DP);
        Self::new(ctx, nvars, [one])
    }

    pub(crate) fn from_basis(basis: GBasis<C>) -> Self {
        let ctx = basis.ctx().clone();
        let nvars = basis.nvars();
        let gens = basis.elements().to_vec();
        let ideal = Ideal { ctx, nvars, gens, gb: OnceLock::new() };
        let _ = ideal.gb.set(basis);
        ideal
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    /// Reduced degrevlex basis (strong over `ℤ`).
    pub fn gb(&self) -> &GBasis<C> {
        self.gb.get_or_init(|| buchberger_in(self.ctx.clone(), self.nvars, &self.gens, DP))
    }

    pub fn gb_with(&self, ord: MonomialOrdering) -> GBasis<C> {
        if ord == DP {
            return self.gb().clone();
        }
        buchberger_in(self.ctx.clone(), self.nvars, &self.gens, ord)
    }

    /// The same ideal with its reduced basis as generators.
    pub fn canonical(&self) -> Self {
        Self::from_basis(self.gb().clone())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.gb().contains(f)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.gb().elements() == other.gb().elements()
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.with_gens(other.gens.iter().cloned())
    }

    /// `⟨self, extra⟩`
    pub fn with_gens(&self, extra: impl IntoIterator<Item = Polynomial<C>>) -> Self {
        Self::new(self.ctx.clone(), self.nvars, self.gens.iter().cloned().chain(extra))
    }

    pub fn constant(&self, n: i64) -> Polynomial<C> {
        Polynomial::from_int(n, self.ctx.clone(), self.nvars, DP)
    }

    /// Total order on ideals by their reduced bases, for reproducible sorting.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let (a, b) = (self.gb().elements(), other.gb().elements());
        for (f, g) in a.iter().zip(b) {
            let c = crate::gb::canonical_cmp(f, g);
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().elements().iter().map(|g| g.lm().clone()).collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> IdealDisplay<'a, C> {
        IdealDisplay { gens: &self.gens, names }
    }
}

impl<C: GbCoeff> PartialEq for Ideal<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.ctx == other.ctx && self.equals(other)
    }
}

impl<C: GbCoeff> Eq for Ideal<C> {}

/// Renders generators as `⟨g₁, g₂⟩` using ASCII angle brackets: `<9, 3*x>`.
pub struct IdealDisplay<'a, C: GbCoeff> {
    gens: &'a [Polynomial<C>],
    names: &'a [String],
}

impl<C: GbCoeff> fmt::Display for IdealDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        if self.gens.is_empty() {
            f.write_str("0")?;
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            fmt::Display::fmt(&PolyDisplay::from_parts(g, self.names), f)?;
        }
        f.write_str(">")
    }
}

/// Runs Buchberger on `gens` in `n + 1` variables under an ordering that
/// eliminates the last one, and returns the basis elements free of it,
/// moved back to `n` variables.
pub(crate) fn eliminate_last<C: GbCoeff>(ctx: &C::Ctx, n: usize, gens: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let ord = MonomialOrdering::elimination(VarMask::single(n));
    let g = buchberger_in(ctx.clone(), n + 1, &gens, ord);
    g.intersect_with_subring(VarMask::all(n))
        .expect("ordering eliminates the tag variable")
        .into_iter()
        .map(|f| f.truncate_vars(n, DP))
        .collect()
}

fn with_tag<C: GbCoeff>(f: &Polynomial<C>) -> Polynomial<C> {
    let ord = MonomialOrdering::elimination(VarMask::single(f.nvars()));
    f.extend_vars(1, ord)
}

/// `I ∩ J` via `⟨t·I, (1 − t)·J⟩ ∩ R[x]`, or as `b·I + a·J` when `I` and
/// `J` contain coprime constants `a` and `b`.
pub fn intersect<C: GbCoeff>(i: &Ideal<C>, j: &Ideal<C>) -> Ideal<C> {
    let n = i.nvars;
    if i.is_unit() {
        return j.clone();
    }
    if j.is_unit() {
        return i.clone();
    }
    if i.is_zero() || j.is_zero() {
        return Ideal::zero(i.ctx.clone(), n);
    }
    if let (Some(a), Some(b)) = (constant_in(i), constant_in(j)) {
        // f = s·a·f + t·b·f for 1 = s·a + t·b
        if C::coprime(&a, &b) {
            let gens = i.gb().elements().iter().map(|f| f.scale(&b)).chain(j.gb().elements().iter().map(|g| g.scale(&a)));
            return Ideal::new(i.ctx.clone(), n, gens.collect::<Vec<_>>());
        }
    }
    intersect_by_tag(i, j)
}

fn intersect_by_tag<C: GbCoeff>(i: &Ideal<C>, j: &Ideal<C>) -> Ideal<C> {
    let n = i.nvars;
    let ord = MonomialOrdering::elimination(VarMask::single(n));
    let t = Polynomial::var(n, i.ctx.clone(), n + 1, ord);
    let one_minus_t = Polynomial::one(i.ctx.clone(), n + 1, ord).sub(&t);
    let gens = i
        .gb()
        .elements()
        .iter()
        .map(|f| with_tag(f).mul(&t))
        .chain(j.gb().elements().iter().map(|g| with_tag(g).mul(&one_minus_t)))
        .collect();
    Ideal::new(i.ctx.clone(), n, eliminate_last(&i.ctx, n, gens))
}

/// A nonzero constant of a proper ideal's basis, if there is one.
fn constant_in<C: GbCoeff>(i: &Ideal<C>) -> Option<C> {
    i.gb().elements().iter().find(|g| g.is_constant()).map(|g| g.lc().clone())
}

/// Intersection of a nonempty family. Members whose constants share a
/// factor are intersected first, so that the groups meet cheaply at the end.
pub fn intersect_all<'a, C: GbCoeff>(ideals: impl IntoIterator<Item = &'a Ideal<C>>) -> Option<Ideal<C>> {
    let mut groups: Vec<(Option<C>, Ideal<C>)> = Vec::new();
    for j in ideals {
        let c = constant_in(j);
        let apart = |g: &Option<C>| matches!((g, &c), (Some(a), Some(b)) if C::coprime(a, b));
        match groups.iter_mut().find(|(g, _)| !apart(g)) {
            Some(entry) => {
                entry.1 = intersect(&entry.1, j);
                entry.0 = constant_in(&entry.1);
            }
            None => groups.push((c, j.clone())),
        }
    }
    let mut it = groups.into_iter().map(|(_, g)| g);
    let first = it.next()?;
    Some(it.fold(first, |acc, j| intersect(&acc, &j)))
}

/// `I : f = (I ∩ ⟨f⟩)/f`.
pub fn quotient<C: GbCoeff>(i: &Ideal<C>, f: &Polynomial<C>) -> Result<Ideal<C>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() && C::is_unit(f.lc()) {
        return Ok(i.clone());
    }
    let principal = Ideal::new(i.ctx.clone(), i.nvars, [f.clone()]);
    let meet = intersect(i, &principal);
    let gens = meet.gens.iter().map(|g| div_exact(g, f).expect("element of ⟨f⟩ is divisible by f"));
    Ok(Ideal::new(i.ctx.clone(), i.nvars, gens))
}

/// `I : J = ⋂ I : f` over the generators `f` of `J`.
pub fn quotient_ideal<C: GbCoeff>(i: &Ideal<C>, j: &Ideal<C>) -> Result<Ideal<C>> {
    if j.is_zero() {
        return Ok(Ideal::unit(i.ctx.clone(), i.nvars));
    }
    let parts = j.gb().elements().iter().map(|f| quotient(i, f)).collect::<Result<Vec<_>>>()?;
    Ok(intersect_all(&parts).expect("nonempty"))
}

/// `I : h^∞ = ⟨I, T·h − 1⟩ ∩ R[x]`.
pub fn saturation<C: GbCoeff>(i: &Ideal<C>, h: &Polynomial<C>) -> Result<Ideal<C>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if (h.is_constant() && C::is_unit(h.lc())) || i.is_zero() || i.is_unit() {
        return Ok(i.clone());
    }
    if !C::IS_FIELD {
        let constant = |c: C| Polynomial::constant(c, i.nvars, h.ordering());
        if h.is_constant() {
            let factors = C::radical_factors(h.lc());
            if factors.len() != 1 || &factors[0] != h.lc() {
                return factors.into_iter().try_fold(i.clone(), |s, f| saturation(&s, &constant(f)));
            }
        } else {
            let content = h.terms()[1..].iter().fold(h.lc().clone(), |g, t| C::bezout(&g, &t.coeff).expect("ring").0);
            if !C::is_unit(&content) {
                let rest = div_exact(h, &constant(content.clone())).expect("content divides");
                return saturation(&saturation(i, &constant(content))?, &rest);
            }
        }
    }
    let n = i.nvars;
    let ord = MonomialOrdering::elimination(VarMask::single(n));
    let t = Polynomial::var(n, i.ctx.clone(), n + 1, ord);
    let th1 = t.mul(&with_tag(h)).sub(&Polynomial::one(i.ctx.clone(), n + 1, ord));
    let gens = i.gb().elements().iter().map(with_tag).chain([th1]).collect();
    Ok(Ideal::new(i.ctx.clone(), n, eliminate_last(&i.ctx, n, gens)))
}

/// `(I : h^∞, m)` with `m` from [`stabilization_exponent`].
pub fn saturate<C: GbCoeff>(i: &Ideal<C>, h: &Polynomial<C>) -> Result<(Ideal<C>, u32)> {
    let s = saturation(i, h)?;
    let m = stabilization_exponent(i, h, &s);
    Ok((s, m))
}

/// Smallest `m ≥ 0` with `h^m·S ⊆ I`, where `S = I : h^∞`; then
/// `I : h^m = I : h^∞`.
pub fn stabilization_exponent<C: GbCoeff>(i: &Ideal<C>, h: &Polynomial<C>, s: &Ideal<C>) -> u32 {
    let mut gens: Vec<Polynomial<C>> = s.gb().elements().to_vec();
    let mut m = 0;
    loop {
        gens.retain(|g| !i.contains(g));
        if gens.is_empty() {
            return m;
        }
        m += 1;
        gens = gens.iter().map(|g| g.mul(h)).collect();
    }
}

/// Element-wise powers `{f₁^m, …, f_k^m}`.
pub fn power_generators<C: GbCoeff>(gens: &[Polynomial<C>], m: u32) -> Result<Vec<Polynomial<C>>> {
    if m == 0 {
        return Err(Error::InvalidArgument("power_generators needs m ≥ 1".into()));
    }
    Ok(gens.iter().map(|f| f.pow(m)).collect())
}

/// Variables sets `u` with no leading monomial of the basis in `R[u]`,
/// of the largest possible size; among those the first in lexicographic
/// order of variable indices.
pub fn max_independent_set<C: GbCoeff>(i: &Ideal<C>) -> Result<VarMask> {
    if i.is_unit() {
        return Err(Error::UnitIdeal("independent set of the unit ideal".into()));
    }
    let lms: Vec<VarMask> = i.leading_monomials().iter().map(Monomial::support).collect();
    let n = i.nvars;
    let independent = |u: VarMask| lms.iter().all(|s| !s.is_subset(u));
    for size in (0..=n).rev() {
        if let Some(u) = combinations(n, size).find(|&u| independent(u)) {
            return Ok(u);
        }
    }
    unreachable!("the empty set is independent for a proper ideal")
}

/// Sets `u` of the largest independent size with `I ∩ R[u] = 0`: first
/// those visible from the leading monomials (in the order
/// [`max_independent_set`] searches them), then, lazily, the others found
/// by elimination.
pub fn max_independent_sets<C: GbCoeff>(i: &Ideal<C>) -> Result<impl Iterator<Item = VarMask> + '_> {
    let d = max_independent_set(i)?.len();
    let lms: Vec<VarMask> = i.leading_monomials().iter().map(Monomial::support).collect();
    let by_lm = move |u: &VarMask| lms.iter().all(|s| !s.is_subset(*u));
    let by_lm2 = by_lm.clone();
    let first = combinations(i.nvars, d).filter(by_lm);
    let rest = combinations(i.nvars, d).filter(move |u| !by_lm2(u)).filter(move |&u| {
        let w = u.complement(i.nvars);
        i.gb_with(MonomialOrdering::block(w)).intersect_with_subring(u).expect("block order eliminates w").is_empty()
    });
    Ok(first.chain(rest))
}

/// Krull dimension of `R[x]/I` over a field (size of a maximal independent set).
pub fn dimension<C: GbCoeff>(i: &Ideal<C>) -> Result<usize> {
    max_independent_set(i).map(VarMask::len)
}

/// `k`-subsets of `{0..n}` in lexicographic order of their sorted index lists.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = VarMask> {
    let mut idx: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.clone()?;
        let out = VarMask::from_indices(cur.iter().copied());
        // advance
        let mut next = cur;
        let mut pos = k;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if next[pos] < n - k + pos {
                next[pos] += 1;
                for q in pos + 1..k {
                    next[q] = next[q - 1] + 1;
                }
                idx = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Nonnegative generator of `I ∩ ℤ` (0 if there is none).
pub fn contract_z(i: &ZIdeal) -> BigInt {
    i.gb()
        .elements()
        .iter()
        .find(|g| g.is_constant())
        .map(|g| g.lc().abs())
        .unwrap_or_default()
}

/// Result of contracting `I ℚ[x]` back to `ℤ[x]`.
#[derive(Clone, Debug)]
pub struct RationalContraction {
    /// `I ℚ[x] ∩ ℤ[x] = I : h^∞`
    pub saturation: ZIdeal,
    /// lcm of the leading coefficients of a basis of `I ℚ[x]` inside `I`
    pub h: BigInt,
    /// `I = (I : h^m) ∩ ⟨I, h^m⟩`
    pub m: u32,
}

/// For `I ∩ ℤ = 0`: the strong basis of `I` is also a Gröbner basis of
/// `I ℚ[x]` made of elements of `I`, so `h = lcm` of its leading
/// coefficients gives `I ℚ[x] ∩ ℤ[x] = I : h^∞`.
pub fn contract_from_rationals(i: &ZIdeal) -> Result<RationalContraction> {
    let q = contract_z(i);
    if !q.is_zero() {
        return Err(Error::InvalidArgument(format!("ideal meets ℤ in ⟨{q}⟩")));
    }
    let h = i.gb().elements().iter().fold(BigInt::one(), |acc, g| numth::lcm(&acc, g.lc()));
    let hp = Polynomial::constant(h.clone(), i.nvars, DP);
    let (saturation, m) = saturate(i, &hp)?;
    Ok(RationalContraction { saturation, h, m })
}
