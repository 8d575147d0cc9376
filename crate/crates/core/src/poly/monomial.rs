use smallvec::SmallVec;

use super::VarMask;

/// Exponent vector `α ∈ ℕⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree_over(&self, mask: VarMask) -> u32 {
        self.0.iter().enumerate().filter(|(i, _)| mask.contains(*i)).map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> VarMask {
        let mut mask = VarMask::EMPTY;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                mask = mask.with(i);
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Part of the monomial in the variables of `mask` (others zeroed).
    pub fn restrict(&self, mask: VarMask) -> Monomial {
        Monomial(self.0.iter().enumerate().map(|(i, &e)| if mask.contains(i) { e } else { 0 }).collect())
    }

    pub fn extend(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(0, extra));
        Monomial(v)
    }

    /// Drops the trailing `count` variables, which must have exponent 0.
    pub fn truncate(&self, nvars: usize) -> Monomial {
        debug_assert!(self.0[nvars..].iter().all(|&e| e == 0));
        Monomial(SmallVec::from_slice(&self.0[..nvars]))
    }

    /// Variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        Monomial(perm.iter().map(|&j| self.0[j]).collect())
    }
}
