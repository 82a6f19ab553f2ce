use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::residue::{is_prime, sqrt_mod_prime, vp_residue, Modulus, MAX_MODULUS_BITS};
use super::PadicError;

/// `Z_p[ζ_p]` modulo a power of `π = 1 − ζ_p`.
///
/// `prec` is the working π-adic precision `N`. Coefficients over the power
/// basis `{1, ζ, …, ζ^{p−2}}` are kept modulo `p^m` with
/// `m = ⌈N/(p−1)⌉ + guard`; the guard digits absorb the divisions by `p`
/// inside the logarithm series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycloRing {
    p: u64,
    prec: u32,
    m: u32,
    guard: u32,
    log_terms: u64,
    modulus: Modulus,
}

/// Last `n` with `n − (p−1)⌊log_p n⌋ < N`; every later term of the log
/// series of a π-adically small element has valuation at least `N`.
fn log_truncation(p: u64, n_prec: u32) -> u64 {
    let target = n_prec as u64;
    let bound = 4 * target + 4 * p;
    let mut last = 0;
    let mut logp = 0u64;
    let mut next_power = p;
    for n in 1..=bound {
        if n == next_power {
            logp += 1;
            next_power = next_power.saturating_mul(p);
        }
        if n < target + (p - 1) * logp {
            last = n;
        }
    }
    last
}

fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

impl CycloRing {
    pub fn new(p: u64, prec: u32) -> Result<Self, PadicError> {
        if p < 3 || !is_prime(p) {
            return Err(PadicError::InvalidPrime(p));
        }
        if prec == 0 {
            return Err(PadicError::PrecisionExhausted);
        }
        let log_terms = log_truncation(p, prec);
        let guard = 2.max(ilog(p, log_terms.max(1)) + 1);
        let m = prec.div_ceil((p - 1) as u32) + guard;
        let mut modulus: u128 = 1;
        for _ in 0..m {
            modulus = modulus
                .checked_mul(p as u128)
                .filter(|x| 128 - x.leading_zeros() <= MAX_MODULUS_BITS)
                .ok_or(PadicError::PrecisionTooLarge { p, prec })?;
        }
        Ok(Self {
            p,
            prec,
            m,
            guard,
            log_terms,
            modulus: Modulus::new(modulus),
        })
    }

    /// Working precision `4(p−1)`.
    pub fn with_default_precision(p: u64) -> Result<Self, PadicError> {
        Self::new(p, default_precision(p))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Working π-adic precision `N`.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Exponent `m` of the coefficient modulus `p^m`.
    pub fn coeff_exponent(&self) -> u32 {
        self.m
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn log_terms(&self) -> u64 {
        self.log_terms
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// π-adic precision carried by the coefficient modulus, `m(p−1)`.
    pub fn capacity(&self) -> u32 {
        self.m * (self.p as u32 - 1)
    }

    pub fn degree(&self) -> usize {
        self.p as usize - 1
    }

    /// Same prime, different working precision.
    pub fn with_prec(&self, prec: u32) -> Result<Self, PadicError> {
        Self::new(self.p, prec)
    }

    pub fn zero(&self) -> CycloElement {
        CycloElement {
            ring: *self,
            coeffs: vec![0; self.degree()],
            prec: self.capacity(),
        }
    }

    pub fn one(&self) -> CycloElement {
        self.from_int(1)
    }

    pub fn from_int(&self, x: i64) -> CycloElement {
        let mut e = self.zero();
        e.coeffs[0] = self.modulus.from_i64(x);
        e
    }

    pub fn from_bigint(&self, x: &BigInt) -> CycloElement {
        let mut e = self.zero();
        e.coeffs[0] = self.modulus.reduce(x);
        e
    }

    /// `ζ_p`.
    pub fn zeta(&self) -> CycloElement {
        self.zeta_pow(1)
    }

    /// `ζ_p^k` reduced to the power basis.
    pub fn zeta_pow(&self, k: u64) -> CycloElement {
        let k = (k % self.p) as usize;
        let mut e = self.zero();
        if k < self.degree() {
            e.coeffs[k] = 1;
        } else {
            for c in e.coeffs.iter_mut() {
                *c = self.modulus.neg(1);
            }
        }
        e
    }

    /// `π = 1 − ζ_p`.
    pub fn pi(&self) -> CycloElement {
        self.one().sub(&self.zeta())
    }

    /// Element from coefficients over the power basis. Extra coefficients
    /// are folded in with `ζ^{p−1} = −(1 + ζ + … + ζ^{p−2})`.
    pub fn from_coeffs(&self, coeffs: &[BigInt]) -> CycloElement {
        let mut acc = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.zeta_pow(i as u64).scale(self.modulus.reduce(c));
            acc = acc.add(&term);
        }
        acc
    }
}

pub fn default_precision(p: u64) -> u32 {
    4 * (p as u32 - 1)
}

/// π-adic valuation; `AtLeast(k)` when the value vanishes at the known
/// precision `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Lower bound in either case.
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Element of `Z_p[ζ_p]` known modulo `π^prec`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    ring: CycloRing,
    coeffs: Vec<u128>,
    prec: u32,
}

impl CycloElement {
    pub fn ring(&self) -> &CycloRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    /// Coefficients as integers in `(−p^m/2, p^m/2]`.
    pub fn balanced_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| self.ring.modulus.balanced(c)).collect()
    }

    /// π-adic precision of this value.
    pub fn known_prec(&self) -> u32 {
        self.prec
    }

    /// Declares a lower precision; never raises it.
    pub fn truncate_prec(&self, prec: u32) -> CycloElement {
        let mut e = self.clone();
        e.prec = e.prec.min(prec);
        e
    }

    fn same_ring(&self, other: &CycloElement) {
        assert_eq!(self.ring, other.ring, "elements of different rings");
    }

    pub fn add(&self, other: &CycloElement) -> CycloElement {
        self.same_ring(other);
        let md = &self.ring.modulus;
        CycloElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| md.add(a, b)).collect(),
            prec: self.prec.min(other.prec),
        }
    }

    pub fn sub(&self, other: &CycloElement) -> CycloElement {
        self.same_ring(other);
        let md = &self.ring.modulus;
        CycloElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| md.sub(a, b)).collect(),
            prec: self.prec.min(other.prec),
        }
    }

    pub fn neg(&self) -> CycloElement {
        let md = &self.ring.modulus;
        CycloElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&a| md.neg(a)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by a `Z_p` residue.
    pub fn scale(&self, k: u128) -> CycloElement {
        let md = &self.ring.modulus;
        CycloElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&a| md.mul(a, k)).collect(),
            prec: self.prec,
        }
    }

    pub fn scale_int(&self, k: i64) -> CycloElement {
        self.scale(self.ring.modulus.from_i64(k))
    }

    pub fn mul(&self, other: &CycloElement) -> CycloElement {
        self.same_ring(other);
        let md = &self.ring.modulus;
        let d = self.ring.degree();
        let p = self.ring.p as usize;
        let mut r = vec![0u128; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    r[i + j] = md.add(r[i + j], md.mul(a, b));
                }
            }
        }
        // ζ^k = ζ^{k−p} for k ≥ p, and ζ^{p−1} = −(1 + … + ζ^{p−2})
        for k in (d..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c == 0 {
                continue;
            }
            if k >= p {
                r[k - p] = md.add(r[k - p], c);
            } else {
                for x in r.iter_mut().take(d) {
                    *x = md.sub(*x, c);
                }
            }
        }
        r.truncate(d);
        CycloElement {
            ring: self.ring,
            coeffs: r,
            prec: self.prec.min(other.prec),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycloElement {
        let mut acc = self.ring.one().truncate_prec(self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image in the residue field `F_p`: `ζ ≡ 1 mod π`.
    pub fn residue(&self) -> u64 {
        let p = self.ring.p as u128;
        (self.coeffs.iter().map(|&c| c % p).sum::<u128>() % p) as u64
    }

    pub fn is_unit(&self) -> bool {
        self.residue() != 0
    }

    /// Coefficients over `{1, π, …, π^{p−2}}`: with `ζ = 1 − π`,
    /// `ζ^i = Σ_j C(i,j)(−π)^j`.
    pub fn pi_basis_coeffs(&self) -> Vec<u128> {
        let md = &self.ring.modulus;
        let d = self.ring.degree();
        let mut out = vec![0u128; d];
        let mut binom = vec![0u128; d];
        for (i, &c) in self.coeffs.iter().enumerate() {
            // row i of Pascal's triangle
            for j in (1..=i).rev() {
                binom[j] = md.add(binom[j], binom[j - 1]);
            }
            binom[0] = 1;
            if c == 0 {
                continue;
            }
            for j in 0..=i {
                let t = md.mul(c, binom[j]);
                out[j] = if j % 2 == 0 { md.add(out[j], t) } else { md.sub(out[j], t) };
            }
        }
        out
    }

    /// `v_π`, computed as `min_j (j + (p−1)·v_p(d_j))` in the π-basis.
    pub fn pi_valuation(&self) -> Valuation {
        let p = self.ring.p;
        let m = self.ring.m;
        let mut best: Option<u32> = None;
        for (j, d) in self.pi_basis_coeffs().into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            let v = j as u32 + (p as u32 - 1) * vp_residue(d, p, m);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        match best {
            Some(v) if v < self.prec => Valuation::Exact(v),
            _ => Valuation::AtLeast(self.prec),
        }
    }

    /// Exact division by `p^k`. Every coefficient must be divisible.
    pub fn div_p_pow(&self, k: u32) -> Result<CycloElement, PadicError> {
        if k == 0 {
            return Ok(self.clone());
        }
        let loss = k * (self.ring.p as u32 - 1);
        if loss >= self.prec || k >= self.ring.m {
            return Err(PadicError::PrecisionExhausted);
        }
        let pk = (self.ring.p as u128).pow(k);
        if self.coeffs.iter().any(|&c| c % pk != 0) {
            return Err(PadicError::UnsupportedValuation);
        }
        Ok(CycloElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&c| c / pk).collect(),
            prec: self.prec - loss,
        })
    }

    /// Inverse of a unit by Newton iteration `z ← z(2 − xz)`.
    pub fn invert(&self) -> Result<CycloElement, PadicError> {
        let r = self.residue();
        if r == 0 {
            return Err(PadicError::NonUnit);
        }
        let p = self.ring.p;
        let r_inv = super::residue::inv_mod_prime(r as i64, p).unwrap();
        let mut z = self.ring.from_int(r_inv as i64);
        let two = self.ring.from_int(2);
        // precision doubles each step starting from 1
        let mut reached = 1u32;
        while reached < self.ring.capacity() {
            z = z.mul(&two.sub(&self.mul(&z)));
            reached = reached.saturating_mul(2);
        }
        z.prec = self.prec;
        Ok(z)
    }

    pub fn div(&self, other: &CycloElement) -> Result<CycloElement, PadicError> {
        Ok(self.mul(&other.invert()?))
    }

    /// Whether `self ≡ other` modulo `π^k` with `k` the smaller precision.
    pub fn agrees_with(&self, other: &CycloElement) -> bool {
        matches!(self.sub(other).pi_valuation(), Valuation::AtLeast(_))
    }

    /// Square root for `y = p^{2j}·u` with `u` a unit whose residue is a
    /// nonzero square. The root of `u` is the one whose residue lies in
    /// `{1, …, (p−1)/2}`.
    pub fn sqrt_hensel(&self) -> Result<CycloElement, PadicError> {
        let v = self.pi_valuation();
        let v = match v {
            Valuation::Exact(v) => v,
            Valuation::AtLeast(_) => return Err(PadicError::UnsupportedValuation),
        };
        let e = self.ring.p as u32 - 1;
        if v % (2 * e) != 0 {
            return Err(PadicError::UnsupportedValuation);
        }
        let j = v / (2 * e);
        let u = self.div_p_pow(2 * j)?;
        let root = u.sqrt_unit()?;
        let pj = self.ring.from_bigint(&BigInt::from(self.ring.p).pow(j));
        let mut r = root.mul(&pj);
        r.prec = u.prec + j * e;
        Ok(r)
    }

    fn sqrt_unit(&self) -> Result<CycloElement, PadicError> {
        let p = self.ring.p;
        let r = self.residue();
        if r == 0 {
            return Err(PadicError::NonUnit);
        }
        let s0 = sqrt_mod_prime(r, p).ok_or(PadicError::NotASquareResidue)?;
        let half = self.ring.modulus.inv(2).unwrap();
        let mut z = self.ring.from_int(s0 as i64);
        let mut reached = 1u32;
        while reached < self.ring.capacity() {
            // z ← (z + y/z)/2
            z = z.add(&self.div(&z)?).scale(half);
            reached = reached.saturating_mul(2);
        }
        z.prec = self.prec;
        Ok(z)
    }

    /// Coefficient 0 as an integer if the element lies in `Z_p`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| self.ring.modulus.balanced(self.coeffs[0]))
    }

    pub fn coeff_u64(&self, i: usize) -> Option<u64> {
        self.coeffs.get(i).and_then(|c| c.to_u64())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CycloElement(p={}, prec={}, {})",
            self.ring.p,
            self.prec,
            super::literal::to_literal(self)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> CycloRing {
        CycloRing::with_default_precision(p).unwrap()
    }

    #[test]
    fn ring_parameters() {
        let r = ring(3);
        assert_eq!(r.prec(), 8);
        assert!(r.guard() >= 2);
        assert_eq!(r.coeff_exponent(), 4 + r.guard());
        // every term after the cut-off has valuation ≥ N
        for p in [3u64, 5, 7, 97] {
            let r = ring(p);
            let t = r.log_terms();
            for n in t + 1..t + 500 {
                let k = ilog(p, n) as u64;
                assert!(n - (p - 1) * k >= r.prec() as u64, "p={p} n={n}");
            }
        }
        assert!(CycloRing::new(2, 4).is_err());
        assert!(CycloRing::new(9, 4).is_err());
        assert!(matches!(CycloRing::new(97, 10_000), Err(PadicError::PrecisionTooLarge { .. })));
    }

    #[test]
    fn minimal_polynomial_reduction() {
        for p in [3u64, 5, 7] {
            let r = ring(p);
            let z = r.zeta();
            let top = z.mul(&z.pow(p - 2));
            assert_eq!(top, r.zeta_pow(p - 1));
            let mut sum = r.zero();
            for i in 0..p - 1 {
                sum = sum.add(&r.zeta_pow(i));
            }
            assert_eq!(top, sum.neg());
            assert_eq!(z.pow(p), r.one());
        }
    }

    #[test]
    fn norm_of_pi() {
        let r = ring(3);
        let a = r.one().sub(&r.zeta());
        let b = r.one().sub(&r.zeta_pow(2));
        assert_eq!(a.mul(&b), r.from_int(3));
    }

    #[test]
    fn inverse_of_two() {
        let r = ring(3);
        let x = r.from_int(2).invert().unwrap();
        assert_eq!(x.mul(&r.from_int(2)), r.one());
        // Euclid oracle mod 3^m
        let m = r.modulus().value();
        assert_eq!(x.coeffs()[0], m.div_ceil(2));
        assert_eq!(r.pi().invert(), Err(PadicError::NonUnit));
    }

    #[test]
    fn valuations() {
        for p in [3u64, 5, 7] {
            let r = ring(p);
            assert_eq!(r.pi().pi_valuation(), Valuation::Exact(1));
            assert_eq!(r.from_int(p as i64).pi_valuation(), Valuation::Exact(p as u32 - 1));
            assert_eq!(r.zero().pi_valuation(), Valuation::AtLeast(r.capacity()));
        }
        assert_eq!(ring(3).from_int(9).pi_valuation(), Valuation::Exact(4));
        let r = ring(5);
        assert_eq!(r.pi().pow(3).scale_int(7).pi_valuation(), Valuation::Exact(3));
    }

    #[test]
    fn square_roots() {
        let r = ring(3);
        let s = r.from_int(9).sqrt_hensel().unwrap();
        assert_eq!(s, r.from_int(3).truncate_prec(s.known_prec()));
        assert_eq!(r.one().sqrt_hensel().unwrap(), r.one());
        let r = ring(5);
        let s = r.from_int(149).sqrt_hensel().unwrap();
        assert_eq!(s.residue(), 2);
        assert!(s.mul(&s).agrees_with(&r.from_int(149)));
        assert_eq!(r.from_int(2).sqrt_hensel(), Err(PadicError::NotASquareResidue));
        assert_eq!(r.from_int(5).sqrt_hensel(), Err(PadicError::UnsupportedValuation));
        assert_eq!(r.pi().sqrt_hensel(), Err(PadicError::UnsupportedValuation));
    }
}
