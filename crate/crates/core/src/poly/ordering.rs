use std::cmp::Ordering;

use super::Monomial;
use crate::{Error, Result};

/// Bit set of variable indices (at most 64 variables).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct VarMask(pub u64);

impl VarMask {
    pub const EMPTY: VarMask = VarMask(0);

    pub fn all(nvars: usize) -> VarMask {
        if nvars >= 64 {
            VarMask(u64::MAX)
        } else {
            VarMask((1u64 << nvars) - 1)
        }
    }

    pub fn single(i: usize) -> VarMask {
        VarMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> VarMask {
        it.into_iter().fold(VarMask::EMPTY, |m, i| m.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> VarMask {
        VarMask(self.0 | 1 << i)
    }

    pub fn union(self, o: VarMask) -> VarMask {
        VarMask(self.0 | o.0)
    }

    pub fn minus(self, o: VarMask) -> VarMask {
        VarMask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: VarMask) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn complement(self, nvars: usize) -> VarMask {
        VarMask::all(nvars).minus(self)
    }
}

/// Ordering used inside one block of a block ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Inner {
    Dp,
    Lex,
}

/// Monomial orderings. Variable order is index order: `x₀ > x₁ > …` for lex,
/// and the degrevlex tie-break looks at the last variable first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrdering {
    /// Degree reverse lexicographical.
    #[default]
    Dp,
    Lex,
    /// Every monomial involving the variables of `high` beyond the other's
    /// `high` part is larger; ties are broken on the remaining variables.
    Block { high: VarMask, high_inner: Inner, low_inner: Inner },
}

impl MonomialOrdering {
    /// Block ordering `high ≫ rest`, degrevlex inside both blocks.
    pub fn block(high: VarMask) -> Self {
        MonomialOrdering::Block { high, high_inner: Inner::Dp, low_inner: Inner::Dp }
    }

    /// Elimination ordering for the variables in `elim` (they dominate).
    pub fn elimination(elim: VarMask) -> Self {
        Self::block(elim)
    }

    /// `high` ordered lexicographically and dominating; degrevlex on the rest.
    pub fn block_lex(high: VarMask) -> Self {
        MonomialOrdering::Block { high, high_inner: Inner::Lex, low_inner: Inner::Dp }
    }

    /// Whether every monomial containing a variable of `vars` is larger
    /// than every monomial free of them.
    pub fn eliminates(&self, vars: VarMask) -> bool {
        if vars.is_empty() {
            return true;
        }
        match self {
            // lex eliminates exactly the initial segments
            MonomialOrdering::Lex => vars.0 & (vars.0 + 1) == 0,
            MonomialOrdering::Block { high, .. } => *high == vars,
            MonomialOrdering::Dp => false,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrdering::Dp => cmp_dp(a, b, VarMask::all(a.len())),
            MonomialOrdering::Lex => cmp_lex(a, b, VarMask::all(a.len())),
            MonomialOrdering::Block { high, high_inner, low_inner } => {
                let low = high.complement(a.len());
                cmp_inner(*high_inner, a, b, *high).then_with(|| cmp_inner(*low_inner, a, b, low))
            }
        }
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::VarMismatch { left: a.nvars(), right: b.nvars() });
        }
        Ok(self.compare(a, b))
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrdering::Dp => "dp".into(),
            MonomialOrdering::Lex => "lex".into(),
            MonomialOrdering::Block { high, high_inner, low_inner } => {
                format!("block({:#x},{:?},{:?})", high.0, high_inner, low_inner)
            }
        }
    }
}

fn cmp_inner(inner: Inner, a: &[u32], b: &[u32], mask: VarMask) -> Ordering {
    match inner {
        Inner::Dp => cmp_dp(a, b, mask),
        Inner::Lex => cmp_lex(a, b, mask),
    }
}

fn cmp_dp(a: &[u32], b: &[u32], mask: VarMask) -> Ordering {
    let (mut da, mut db) = (0u64, 0u64);
    for i in 0..a.len() {
        if mask.contains(i) {
            da += a[i] as u64;
            db += b[i] as u64;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if mask.contains(i) && a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn cmp_lex(a: &[u32], b: &[u32], mask: VarMask) -> Ordering {
    for i in 0..a.len() {
        if mask.contains(i) && a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}
