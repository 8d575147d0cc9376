use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIAL_BOUND: usize = 1_000_000;

/// Miller–Rabin with the first 13 primes as bases is exact below this bound.
const DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_ROUNDS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed Baillie–PSW plus random Miller–Rabin rounds; not proven.
    ProbablePrime,
}

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; TRIAL_BOUND + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= TRIAL_BOUND {
            if sieve[i] {
                let mut j = i * i;
                while j <= TRIAL_BOUND {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &b)| b.then_some(k as u32))
            .collect()
    })
}

pub fn is_prime(n: &BigInt) -> bool {
    primality(n) != Primality::Composite
}

pub fn primality(n: &BigInt) -> Primality {
    if *n < BigInt::from(2) {
        return Primality::Composite;
    }
    for &p in &small_primes()[..168] {
        let p = BigInt::from(p);
        if *n == p {
            return Primality::Prime;
        }
        if (n % &p).is_zero() {
            return Primality::Composite;
        }
    }
    if let Some(m) = n.to_u64() {
        return if DETERMINISTIC_BASES.iter().all(|&b| miller_rabin_u64(m, b as u64)) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    let deterministic = n < &DETERMINISTIC_BOUND.parse::<BigInt>().unwrap();
    if deterministic {
        return if DETERMINISTIC_BASES.iter().all(|&b| miller_rabin(n, &BigInt::from(b))) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if !miller_rabin(n, &BigInt::from(2)) || !strong_lucas(n) {
        return Primality::Composite;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bound = n - BigInt::from(3);
    for _ in 0..RANDOM_ROUNDS {
        let a = random_below(&mut rng, &bound) + BigInt::from(2);
        if !miller_rabin(n, &a) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn miller_rabin(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn random_below(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    let bytes = (bound.bits() as usize).div_ceil(8) + 8;
    let buf: Vec<u8> = (0..bytes).map(|_| rng.gen()).collect();
    BigInt::from_bytes_le(num_bigint::Sign::Plus, &buf) % bound
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn is_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Strong Lucas probable-prime test with Selfridge's parameters.
fn strong_lucas(n: &BigInt) -> bool {
    if is_square(n) {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.abs() != *n => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let half = |x: BigInt| -> BigInt {
        let x = x.mod_floor(n);
        if x.is_odd() {
            (x + n) >> 1
        } else {
            x >> 1
        }
    };
    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    // binary ladder over the bits of k computing U_k, V_k, Q^k
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for i in (0..k.bits()).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let u1 = half(&p * &u + &v);
            let v1 = half(&d * &u + &p * &v);
            u = u1;
            v = v1;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - BigInt::from(2) * &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// A nontrivial divisor of the composite `n` (Brent's cycle detection).
pub(crate) fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        if let Some(d) = brent_attempt(n, &c) {
            return d;
        }
        c += 1;
    }
}

fn brent_attempt(n: &BigInt, c: &BigInt) -> Option<BigInt> {
    const BATCH: u64 = 128;
    let f = |x: &BigInt| (x * x + c) % n;
    let mut y = BigInt::from(2);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = BigInt::one();
    let mut q = BigInt::one();
    let mut r: u64 = 1;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u128) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u128;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn known_values() {
        assert!(is_prime(&BigInt::from(181)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(0)));
        assert!(is_prime(&BigInt::from(2)));
        assert!(!is_prime(&BigInt::from(561)));
        assert!(is_prime(&BigInt::from(1_000_000_007)));
    }

    #[test]
    fn agrees_with_trial_division_below_20000() {
        for n in 0..20_000u128 {
            assert_eq!(is_prime(&BigInt::from(n)), trial_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn two_pow_64_plus_13() {
        // Prime (confirmed offline by a table/trial-division oracle); the
        // in-test cross-check is Euler's criterion, which every prime meets.
        let n = (BigInt::one() << 64) + 13;
        assert_eq!(primality(&n), Primality::Prime);
        let half = (&n - 1u32) >> 1;
        for b in [2u32, 3, 5, 7, 11, 13] {
            let r = BigInt::from(b).modpow(&half, &n);
            assert!(r.is_one() || r == &n - 1u32);
        }
    }

    #[test]
    fn large_primes_and_composites() {
        // 2^89 - 1 is a Mersenne prime, 2^67 - 1 is composite
        let m89 = (BigInt::one() << 89) - 1;
        let m67 = (BigInt::one() << 67) - 1;
        assert!(is_prime(&m89));
        assert!(!is_prime(&m67));
        let big_prime = (BigInt::one() << 127) - 1;
        assert_eq!(primality(&big_prime), Primality::ProbablePrime);
        assert_eq!(primality(&(&big_prime * &m89)), Primality::Composite);
    }

    #[test]
    fn lucas_rejects_strong_pseudoprime_to_base_two() {
        // 3215031751 = 151·751·28351 is a strong pseudoprime to bases 2,3,5,7
        let n = BigInt::from(3_215_031_751u64);
        assert!(miller_rabin(&n, &BigInt::from(2)));
        assert!(!strong_lucas(&n));
    }

    #[test]
    fn rho_splits() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let d = pollard_brent(&n);
        assert!(d > BigInt::one() && d < n);
        assert!((&n % &d).is_zero());
    }
}
