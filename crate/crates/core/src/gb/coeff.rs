use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numth::{self, BigRat, FpElem};
use crate::poly::{Coeff, Field, Polynomial};

/// What the Gröbner machinery needs from a coefficient domain: fields
/// (ordinary bases) and `ℤ` (strong bases).
pub trait GbCoeff: Coeff {
    const IS_FIELD: bool;

    /// `q` with `c = q·d`, if `d | c`.
    fn exact_quotient(c: &Self, d: &Self) -> Option<Self>;

    /// Nonzero `q` with `c − q·d` in `[0, |d|)`. Always `None` over fields.
    fn partial_quotient(c: &Self, d: &Self) -> Option<Self>;

    fn divides(d: &Self, c: &Self) -> bool;

    fn is_unit(c: &Self) -> bool;

    /// `(a', b')` with `a'·a = b'·b` equal to the (normalized) lcm.
    fn s_cofactors(a: &Self, b: &Self) -> (Self, Self);

    /// Bézout data `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`; `None` over fields.
    fn bezout(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;

    fn coeff_lcm(a: &Self, b: &Self) -> Self;

    fn coprime(a: &Self, b: &Self) -> bool;

    /// Positive leading coefficient over `ℤ`, monic over fields.
    fn normalize(f: Polynomial<Self>) -> Polynomial<Self>;

    /// Elements whose product has the same radical as `c`. Saturating by a
    /// composite integer through one tag variable is far slower than
    /// saturating by its primes in turn.
    fn radical_factors(c: &Self) -> Vec<Self> {
        vec![c.clone()]
    }

    /// Hook run on every finished basis; see [`super::recorder`].
    fn record(_g: &super::GBasis<Self>) {}
}

macro_rules! field_gb {
    ($t:ty) => {
        impl GbCoeff for $t {
            const IS_FIELD: bool = true;

            fn exact_quotient(c: &Self, d: &Self) -> Option<Self> {
                Some(Field::div(c, d))
            }
            fn partial_quotient(_: &Self, _: &Self) -> Option<Self> {
                None
            }
            fn divides(d: &Self, _: &Self) -> bool {
                !Coeff::is_zero_coeff(d)
            }
            fn is_unit(c: &Self) -> bool {
                !Coeff::is_zero_coeff(c)
            }
            fn s_cofactors(a: &Self, b: &Self) -> (Self, Self) {
                (Field::inv(a), Field::inv(b))
            }
            fn bezout(_: &Self, _: &Self) -> Option<(Self, Self, Self)> {
                None
            }
            fn coeff_lcm(a: &Self, _: &Self) -> Self {
                Coeff::one_in(&a.ctx())
            }
            fn coprime(_: &Self, _: &Self) -> bool {
                true
            }
            fn normalize(f: Polynomial<Self>) -> Polynomial<Self> {
                f.monic()
            }
        }
    };
}

field_gb!(BigRat);
field_gb!(FpElem);

impl GbCoeff for BigInt {
    const IS_FIELD: bool = false;

    fn exact_quotient(c: &Self, d: &Self) -> Option<Self> {
        let (q, r) = c.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn partial_quotient(c: &Self, d: &Self) -> Option<Self> {
        let r = c.mod_floor(&d.abs());
        let q = (c - &r) / d;
        (!q.is_zero()).then_some(q)
    }

    fn divides(d: &Self, c: &Self) -> bool {
        !d.is_zero() && (c % d).is_zero()
    }

    fn is_unit(c: &Self) -> bool {
        c.abs().is_one()
    }

    fn radical_factors(c: &Self) -> Vec<Self> {
        match numth::factorize(&c.abs()) {
            Ok(f) => f.primes().cloned().collect(),
            Err(_) => vec![c.clone()],
        }
    }

    fn s_cofactors(a: &Self, b: &Self) -> (Self, Self) {
        let l = numth::lcm(a, b);
        (&l / a, &l / b)
    }

    fn bezout(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        Some(numth::ext_gcd(a, b))
    }

    fn coeff_lcm(a: &Self, b: &Self) -> Self {
        numth::lcm(a, b)
    }

    fn coprime(a: &Self, b: &Self) -> bool {
        a.gcd(b).is_one()
    }

    fn normalize(f: Polynomial<Self>) -> Polynomial<Self> {
        if !f.is_zero() && f.lc().is_negative() {
            f.neg()
        } else {
            f
        }
    }

    fn record(g: &super::GBasis<Self>) {
        super::recorder::record(g);
    }
}
