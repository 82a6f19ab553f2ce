use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Largest modulus accepted: sums of two residues must fit in a `u128` and
/// the chunked multiplication needs a few spare bits.
pub const MAX_MODULUS_BITS: u32 = 124;

/// Arithmetic modulo a fixed `M < 2^124`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u128,
    bits: u32,
}

impl Modulus {
    pub fn new(m: u128) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        let bits = 128 - m.leading_zeros();
        assert!(bits <= MAX_MODULUS_BITS, "modulus too large");
        Self { m, bits }
    }

    pub fn value(&self) -> u128 {
        self.m
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if self.bits <= 64 {
            return (a * b) % self.m;
        }
        // Horner over chunks of b, small enough that acc·2^c + a·chunk fits
        let c = 127 - self.bits;
        let mask = (1u128 << c) - 1;
        let mut shift = self.bits.div_ceil(c) * c;
        let mut acc = 0u128;
        while shift > 0 {
            shift -= c;
            let chunk = (b >> shift) & mask;
            acc = ((acc << c) % self.m + (a * chunk) % self.m) % self.m;
        }
        acc
    }

    pub fn pow(&self, mut base: u128, mut e: u128) -> u128 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse when `gcd(a, M) = 1`.
    pub fn inv(&self, a: u128) -> Option<u128> {
        let g = BigInt::from(a).extended_gcd(&BigInt::from(self.m));
        if g.gcd != BigInt::from(1) {
            return None;
        }
        Some(self.reduce(&g.x))
    }

    pub fn reduce(&self, x: &BigInt) -> u128 {
        x.mod_floor(&BigInt::from(self.m)).to_u128().unwrap()
    }

    pub fn from_i64(&self, x: i64) -> u128 {
        (x as i128).rem_euclid(self.m as i128) as u128
    }

    /// Representative in `(−M/2, M/2]`.
    pub fn balanced(&self, a: u128) -> BigInt {
        if a > self.m / 2 {
            -BigInt::from(self.m - a)
        } else {
            BigInt::from(a)
        }
    }
}

/// `v_p(a)` for a residue modulo `p^m`, capped at `m` when `a ≡ 0`.
pub fn vp_residue(a: u128, p: u64, m: u32) -> u32 {
    if a == 0 {
        return m;
    }
    let mut a = a;
    let mut v = 0;
    while a.is_multiple_of(p as u128) {
        a /= p as u128;
        v += 1;
    }
    v.min(m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Square root of a nonzero square mod `p` in `{1, …, (p−1)/2}`.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (1..=(p - 1) / 2).find(|&x| x * x % p == a)
}

pub fn inv_mod_prime(a: i64, p: u64) -> Option<u64> {
    let a = BigInt::from(a).mod_floor(&BigInt::from(p));
    let g = a.extended_gcd(&BigInt::from(p));
    (g.gcd == BigInt::from(1)).then(|| g.x.mod_floor(&BigInt::from(p)).to_u64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_modulus() {
        let m = Modulus::new(27);
        assert_eq!(m.mul(26, 26), 1);
        assert_eq!(m.inv(2), Some(14));
        assert_eq!(m.inv(3), None);
        assert_eq!(m.from_i64(-1), 26);
        assert_eq!(m.balanced(26), BigInt::from(-1));
    }

    proptest! {
        #[test]
        fn wide_mul_matches_bigint(a in any::<u128>(), b in any::<u128>(), bits in 65u32..=124) {
            let modulus = (1u128 << (bits - 1)) + 12345;
            let m = Modulus::new(modulus);
            let (a, b) = (a % modulus, b % modulus);
            let expect = (BigInt::from(a) * BigInt::from(b)) % BigInt::from(modulus);
            prop_assert_eq!(BigInt::from(m.mul(a, b)), expect);
        }
    }

    #[test]
    fn residue_helpers() {
        assert_eq!(vp_residue(18, 3, 5), 2);
        assert_eq!(vp_residue(0, 3, 5), 5);
        assert_eq!(sqrt_mod_prime(4, 5), Some(2));
        assert_eq!(sqrt_mod_prime(2, 5), None);
        assert_eq!(inv_mod_prime(-4, 7), Some(5));
        assert!(is_prime(97) && !is_prime(91));
    }
}
