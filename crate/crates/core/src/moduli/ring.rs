use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Fq;
use crate::padic::{CycloElement, Modulus};

/// Exact commutative ring arithmetic shared by the coefficient rings the
/// curve formulas are evaluated over.
pub trait RingElt: Clone + PartialEq + fmt::Debug {
    /// The integer `n` in the ring of `self`.
    fn int_like(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_unit(&self) -> bool;
    fn try_inv(&self) -> Option<Self>;

    fn is_zero(&self) -> bool {
        *self == self.int_like(0)
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.int_like(1), |acc, _| acc.mul(self))
    }

    fn scale(&self, n: i64) -> Self {
        self.mul(&self.int_like(n))
    }
}

impl RingElt for BigRational {
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| BigRational::one() / self)
    }
}

impl RingElt for Fq {
    fn int_like(&self, n: i64) -> Self {
        self.field().from_int(n)
    }
    fn add(&self, o: &Self) -> Self {
        Fq::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fq::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fq::mul(self, o)
    }
    fn neg(&self) -> Self {
        Fq::neg(self)
    }
    fn is_unit(&self) -> bool {
        !Fq::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

impl RingElt for CycloElement {
    fn int_like(&self, n: i64) -> Self {
        self.ring().from_int(n)
    }
    fn add(&self, o: &Self) -> Self {
        CycloElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycloElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycloElement::neg(self)
    }
    fn is_unit(&self) -> bool {
        CycloElement::is_unit(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
}

/// Element of `Z/p^m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zpm {
    p: u64,
    md: Modulus,
    v: u128,
}

impl Zpm {
    pub fn new(p: u64, m: u32, v: i64) -> Self {
        let md = Modulus::new((p as u128).pow(m));
        Self { p, md, v: md.from_i64(v) }
    }

    pub fn value(&self) -> u128 {
        self.v
    }

    fn with(&self, v: u128) -> Self {
        Self { v, ..*self }
    }
}

impl fmt::Debug for Zpm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.md.value())
    }
}

impl RingElt for Zpm {
    fn int_like(&self, n: i64) -> Self {
        self.with(self.md.from_i64(n))
    }
    fn add(&self, o: &Self) -> Self {
        self.with(self.md.add(self.v, o.v))
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(self.md.sub(self.v, o.v))
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(self.md.mul(self.v, o.v))
    }
    fn neg(&self) -> Self {
        self.with(self.md.neg(self.v))
    }
    fn is_unit(&self) -> bool {
        !self.v.is_multiple_of(self.p as u128)
    }
    fn try_inv(&self) -> Option<Self> {
        self.md.inv(self.v).map(|v| self.with(v))
    }
}
