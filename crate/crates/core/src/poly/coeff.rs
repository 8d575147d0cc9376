use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numth::FpElem;

/// Coefficient ring of a [`Polynomial`](super::Polynomial).
///
/// `Ctx` is whatever is needed to create constants: nothing for `ℤ` and
/// `ℚ`, the modulus for `𝔽ₚ`.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_int(n: &BigInt, ctx: &Self::Ctx) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn is_one_coeff(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(n: i64, ctx: &Self::Ctx) -> Self {
        Self::from_int(&BigInt::from(n), ctx)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    /// Used only for rendering a leading minus sign.
    fn is_negative_coeff(&self) -> bool {
        false
    }

    /// A fixed total order used to sort bases and components reproducibly.
    fn cmp_canonical(&self, other: &Self) -> Ordering;
}

pub trait Field: Coeff {
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// `0` for `ℚ`, `p` for `𝔽ₚ`.
    fn characteristic(ctx: &Self::Ctx) -> u64;
}

impl Coeff for BigInt {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero_in(_: &()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one_in(_: &()) -> Self {
        <BigInt as One>::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        n.clone()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one_coeff(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn is_negative_coeff(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}
    fn zero_in(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one_in(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one_coeff(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negative_coeff(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
}

impl Coeff for FpElem {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus()
    }
    fn zero_in(p: &u64) -> Self {
        FpElem::from_u64(0, *p)
    }
    fn one_in(p: &u64) -> Self {
        FpElem::from_u64(1, *p)
    }
    fn from_int(n: &BigInt, p: &u64) -> Self {
        let r = n.mod_floor(&BigInt::from(*p));
        FpElem::from_u64(u64::try_from(&r).expect("residue fits"), *p)
    }
    fn from_i64(n: i64, p: &u64) -> Self {
        FpElem::new(n, *p)
    }
    fn is_zero_coeff(&self) -> bool {
        FpElem::is_zero(self)
    }
    fn is_one_coeff(&self) -> bool {
        self.value() == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        FpElem::add(*self, *rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FpElem::sub(*self, *rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FpElem::mul(*self, *rhs)
    }
    fn neg(&self) -> Self {
        FpElem::neg(*self)
    }
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

impl Field for FpElem {
    fn inv(&self) -> Self {
        FpElem::inv(*self)
    }
    fn characteristic(p: &u64) -> u64 {
        *p
    }
}
