use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PadicError;

/// A place of `Q`: the real place or a prime (2 included).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `x = p^α · u` with `u` a p-adic unit.
fn split(x: &BigRational, p: u64) -> (i64, BigRational) {
    let pb = BigInt::from(p);
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let mut alpha = 0i64;
    while (&num % &pb).is_zero() {
        num /= &pb;
        alpha += 1;
    }
    while (&den % &pb).is_zero() {
        den /= &pb;
        alpha -= 1;
    }
    (alpha, BigRational::new(num, den))
}

/// Legendre symbol of an integer prime to the odd prime `p`.
fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    let e = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit rational; `1/d` has the symbol of `d`.
fn legendre_unit(u: &BigRational, p: u64) -> i32 {
    legendre(u.numer(), p) * legendre(u.denom(), p)
}

/// `u mod 8` for a 2-adic unit rational.
fn mod8(u: &BigRational) -> u64 {
    // odd d satisfies d² ≡ 1 mod 8, so 1/d ≡ d
    (u.numer() * u.denom()).mod_floor(&BigInt::from(8)).to_u64().unwrap()
}

fn sign_pow(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Local quadratic Hilbert symbol `(a, b)_v ∈ {±1}`.
pub fn quad_hilbert(a: &BigRational, b: &BigRational, place: Place) -> Result<i32, PadicError> {
    if a.is_zero() || b.is_zero() {
        return Err(PadicError::ZeroArgument);
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (alpha, u) = split(a, 2);
            let (beta, v) = split(b, 2);
            let (u8_, v8) = (mod8(&u), mod8(&v));
            let eps = |x: u64| ((x - 1) / 2 % 2) as i64;
            let omega = |x: u64| ((x * x - 1) / 8 % 2) as i64;
            Ok(sign_pow(eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_)))
        }
        Place::Prime(p) => {
            let (alpha, u) = split(a, p);
            let (beta, v) = split(b, p);
            let mut s = sign_pow(alpha * beta * ((p as i64 - 1) / 2));
            if beta.rem_euclid(2) == 1 {
                s *= legendre_unit(&u, p);
            }
            if alpha.rem_euclid(2) == 1 {
                s *= legendre_unit(&v, p);
            }
            Ok(s)
        }
    }
}

/// Prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor above u64 range"));
    }
    out
}

/// The real place, 2, and every odd prime dividing a numerator or
/// denominator of `a` or `b`; all other symbols are 1.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut primes = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_factors(x));
    }
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

/// Whether the quaternion algebra `(a, b)_Q` splits, decided place by place.
pub fn quaternion_trivial_over_q(a: &BigRational, b: &BigRational) -> Result<bool, PadicError> {
    for v in relevant_places(a, b) {
        if quad_hilbert(a, b, v)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `∏_v (a, b)_v = 1`.
pub fn product_formula_holds(a: &BigRational, b: &BigRational) -> Result<bool, PadicError> {
    let mut prod = 1;
    for v in relevant_places(a, b) {
        prod *= quad_hilbert(a, b, v)?;
    }
    Ok(prod == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn minus_one_minus_one() {
        assert_eq!(quad_hilbert(&q(-1), &q(-1), Place::Real).unwrap(), -1);
        assert_eq!(quad_hilbert(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
        for p in [3, 5, 7, 11] {
            assert_eq!(quad_hilbert(&q(-1), &q(-1), Place::Prime(p)).unwrap(), 1);
        }
        assert!(!quaternion_trivial_over_q(&q(-1), &q(-1)).unwrap());
    }

    #[test]
    fn minus_one_two() {
        assert_eq!(quad_hilbert(&q(-1), &q(2), Place::Prime(2)).unwrap(), 1);
        assert!(quaternion_trivial_over_q(&q(-1), &q(2)).unwrap());
        assert!(quaternion_trivial_over_q(&q(1), &q(-35)).unwrap());
    }

    #[test]
    fn classical_values() {
        // (−1,3) ramifies at 2 and 3; (2,5) ramifies at 2 and 5
        assert_eq!(quad_hilbert(&q(-1), &q(3), Place::Prime(3)).unwrap(), -1);
        assert_eq!(quad_hilbert(&q(-1), &q(3), Place::Prime(2)).unwrap(), -1);
        assert_eq!(quad_hilbert(&q(2), &q(5), Place::Prime(5)).unwrap(), -1);
        assert_eq!(quad_hilbert(&q(2), &q(5), Place::Prime(2)).unwrap(), -1);
        assert_eq!(quad_hilbert(&q(2), &q(7), Place::Prime(2)).unwrap(), 1);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            quad_hilbert(&half, &q(5), Place::Prime(5)).unwrap(),
            quad_hilbert(&q(2), &q(5), Place::Prime(5)).unwrap()
        );
        assert_eq!(quad_hilbert(&q(0), &q(5), Place::Real), Err(PadicError::ZeroArgument));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(-97)), vec![97]);
        assert!(prime_factors(&BigInt::from(1)).is_empty());
    }
}
