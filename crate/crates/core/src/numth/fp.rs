use std::fmt;

/// Element of `𝔽ₚ` for a prime `p < 2⁶²`. Each element carries its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        FpElem { value: v, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        FpElem { value: value % modulus, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value + o.value;
        FpElem { value: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }

    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let v = if self.value >= o.value { self.value - o.value } else { self.value + self.modulus - o.value };
        FpElem { value: v, modulus: self.modulus }
    }

    pub fn neg(self) -> Self {
        FpElem { value: if self.value == 0 { 0 } else { self.modulus - self.value }, modulus: self.modulus }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let v = (self.value as u128 * o.value as u128 % self.modulus as u128) as u64;
        FpElem { value: v, modulus: self.modulus }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FpElem { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        let (mut a, mut b) = (self.value as i128, self.modulus as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        FpElem { value: x0.rem_euclid(self.modulus as i128) as u64, modulus: self.modulus }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
