//! Integer arithmetic needed to split an ideal along the prime factors of
//! its integer contraction: gcd/lcm, primality and factorization.
//!
//! `BigInt`/`BigRat` are the `num` types; `FpElem` is a word-sized prime
//! field element.

mod fp;
mod primes;

pub use fp::FpElem;
pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;
pub use primes::{is_prime, primality, Primality};
pub(crate) use primes::small_primes;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Nonnegative greatest common divisor, `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Nonnegative least common multiple, `0` if either argument is `0`.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd(a, b) * b).abs()
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// `n = ∏ pᵢ^νᵢ` with the primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<(BigInt, u32)>,
    /// `false` when some factor is only a probable prime (beyond the
    /// deterministic Miller–Rabin range).
    pub proven: bool,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn recompose(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

/// Trial division by primes below 10⁶, then Pollard rho (Brent) on what is left.
pub fn factorize(n: &BigInt) -> Result<PrimeFactorization> {
    if *n <= BigInt::one() {
        return Err(Error::FactorInput(format!("{n}: input must be at least 2")));
    }
    let mut rest = n.clone();
    let mut found: Vec<BigInt> = Vec::new();
    for &p in primes::small_primes() {
        let p = BigInt::from(p);
        if &p * &p > rest {
            break;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
            found.push(p.clone());
        }
    }
    let mut proven = true;
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            match primality(&m) {
                Primality::Prime => found.push(m),
                Primality::ProbablePrime => {
                    proven = false;
                    found.push(m);
                }
                Primality::Composite => {
                    let d = primes::pollard_brent(&m);
                    stack.push(&m / &d);
                    stack.push(d);
                }
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PrimeFactorization { factors, proven })
}

/// Exponent of the largest power of `p` dividing `n` (`n ≠ 0`).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return 0;
    }
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&bi(0), &bi(0)), bi(0));
        assert_eq!(gcd(&bi(12), &bi(18)), bi(6));
        assert_eq!(gcd(&bi(2 * 3 * 5 * 13 * 17 * 181), &bi(181)), bi(181));
        assert_eq!(gcd(&bi(-12), &bi(18)), bi(6));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm(&bi(2), &bi(3)), bi(6));
        assert_eq!(lcm(&bi(4), &bi(6)), bi(12));
        assert_eq!(lcm(&bi(0), &bi(5)), bi(0));
        assert_eq!(lcm(&bi(-4), &bi(6)), bi(12));
    }

    #[test]
    fn ext_gcd_is_bezout() {
        for (a, b) in [(4, 6), (-4, 6), (9, 3), (0, 5), (7, -3)] {
            let (g, s, t) = ext_gcd(&bi(a), &bi(b));
            assert_eq!(g, gcd(&bi(a), &bi(b)));
            assert_eq!(s * bi(a) + t * bi(b), g);
        }
    }

    #[test]
    fn factorize_examples() {
        let n = bi(2 * 9 * 5 * 343 * 11 * 13 * 17 * 19 * 23);
        let f = factorize(&n).unwrap();
        let expect: Vec<(BigInt, u32)> = [(2, 1), (3, 2), (5, 1), (7, 3), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1)]
            .iter()
            .map(|&(p, e)| (bi(p), e))
            .collect();
        assert_eq!(f.factors, expect);
        assert!(f.proven);
        assert_eq!(factorize(&bi(4)).unwrap().factors, vec![(bi(2), 2)]);
        assert_eq!(factorize(&bi(1_000_000_007)).unwrap().factors, vec![(bi(1_000_000_007), 1)]);
    }

    #[test]
    fn factorize_rejects_small() {
        assert!(factorize(&bi(1)).is_err());
        assert!(factorize(&bi(0)).is_err());
        assert!(factorize(&bi(-6)).is_err());
    }

    #[test]
    fn factorize_needs_rho() {
        // two primes above the trial-division bound
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * &p;
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors, vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn valuation_counts_powers() {
        assert_eq!(valuation(&bi(72), &bi(2)), 3);
        assert_eq!(valuation(&bi(72), &bi(3)), 2);
        assert_eq!(valuation(&bi(-9), &bi(3)), 2);
        assert_eq!(valuation(&bi(5), &bi(3)), 0);
    }
}
