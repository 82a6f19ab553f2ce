use std::fmt;

use super::residue::{inv_mod_prime, vp_residue};
use super::ring::{CycloElement, CycloRing, Valuation};
use super::PadicError;

/// Lift of a nonzero residue to the `(p−1)`-th roots of unity in `Z_p`,
/// the limit of `c, c^p, c^{p²}, …`.
pub fn teichmuller(c: u64, ring: &CycloRing) -> Result<CycloElement, PadicError> {
    let p = ring.p();
    if c.is_multiple_of(p) {
        return Err(PadicError::NonUnit);
    }
    let md = ring.modulus();
    let mut w = (c % p) as u128;
    // each step gains one p-adic digit
    for _ in 0..=ring.coeff_exponent() {
        let next = md.pow(w, p as u128);
        if next == w {
            break;
        }
        w = next;
    }
    Ok(ring.one().scale(w))
}

/// `log(a) = Σ_{n=1}^{T} (−1)^{n+1} xⁿ/n` with `x = a − 1`, for `a ≡ 1 mod π`.
pub fn log_one_unit(a: &CycloElement) -> Result<CycloElement, PadicError> {
    let ring = *a.ring();
    let x = a.sub(&ring.one());
    if x.residue() != 0 {
        return Err(PadicError::NotOneUnit);
    }
    let p = ring.p();
    let md = ring.modulus();
    let mut acc = ring.zero();
    let mut xn = ring.one();
    let mut worst_loss = 0u32;
    for n in 1..=ring.log_terms() {
        xn = xn.mul(&x);
        let mut k = 0u32;
        let mut unit = n;
        while unit % p == 0 {
            unit /= p;
            k += 1;
        }
        // xⁿ lies in 𝔭ⁿ ⊆ p^k·Z_p[ζ], so the division is exact
        let term = xn.div_p_pow(k)?;
        worst_loss = worst_loss.max(k * (p as u32 - 1));
        let inv = md.inv(unit as u128).expect("unit part of n is prime to p");
        let term = term.scale(inv);
        acc = if n % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    let prec = ring.prec().min(x.known_prec().saturating_sub(worst_loss));
    Ok(acc.truncate_prec(prec))
}

/// `Tr_{Q_p(ζ_p)/Q_p}` as a residue modulo `p^m`, together with the number
/// of p-adic digits it is known to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceValue {
    pub value: u128,
    pub p_digits: u32,
}

/// `Tr(Σ aᵢζ^i) = a₀(p−1) − Σ_{i≥1} aᵢ`.
pub fn trace(x: &CycloElement) -> TraceValue {
    let ring = x.ring();
    let md = ring.modulus();
    let c = x.coeffs();
    let mut t = md.mul(c[0], (ring.p() - 1) as u128);
    for &a in &c[1..] {
        t = md.sub(t, a);
    }
    // an error in 𝔭^k = π^k·O traces into p^{⌊k/(p−1)⌋}Z_p
    TraceValue {
        value: t,
        p_digits: (x.known_prec() / (ring.p() as u32 - 1)).min(ring.coeff_exponent()),
    }
}

/// Exponent `e` with `(ζ_p, b)_𝔭 = ζ_p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolExponent {
    pub p: u64,
    pub value: u64,
}

impl SymbolExponent {
    pub fn new(p: u64, value: i64) -> Self {
        Self {
            p,
            value: value.rem_euclid(p as i64) as u64,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &SymbolExponent) -> SymbolExponent {
        assert_eq!(self.p, other.p);
        SymbolExponent {
            p: self.p,
            value: (self.value + other.value) % self.p,
        }
    }

    pub fn neg(&self) -> SymbolExponent {
        SymbolExponent::new(self.p, -(self.value as i64))
    }
}

impl fmt::Display for SymbolExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// `(ζ_p, b)_𝔭` for a π-unit `b`: split off the Teichmüller factor, which is
/// a p-th power, then read `Tr(log u)/p mod p` for the remaining 1-unit.
pub fn symbol_zeta(b: &CycloElement) -> Result<SymbolExponent, PadicError> {
    let ring = *b.ring();
    let p = ring.p();
    let r = b.residue();
    if r == 0 {
        return Err(PadicError::NonUnit);
    }
    let r_inv = inv_mod_prime(r as i64, p).unwrap();
    let omega_inv = teichmuller(r_inv, &ring)?;
    let u = b.mul(&omega_inv);
    let l = log_one_unit(&u)?;
    if l.known_prec() < 2 * (p as u32 - 1) {
        return Err(PadicError::PrecisionExhausted);
    }
    let tr = trace(&l);
    if tr.p_digits < 2 {
        return Err(PadicError::PrecisionExhausted);
    }
    if vp_residue(tr.value, p, ring.coeff_exponent()) < 1 {
        return Err(PadicError::TraceNotDivisible);
    }
    let e = (tr.value / p as u128) % p as u128;
    Ok(SymbolExponent { p, value: e as u64 })
}

/// `v_π` convenience that treats "vanishes to working precision" as `None`.
pub fn exact_valuation(x: &CycloElement) -> Option<u32> {
    match x.pi_valuation() {
        Valuation::Exact(v) => Some(v),
        Valuation::AtLeast(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> CycloRing {
        CycloRing::with_default_precision(p).unwrap()
    }

    #[test]
    fn teichmuller_lifts() {
        let r = ring(5);
        assert_eq!(teichmuller(1, &r).unwrap(), r.one());
        assert_eq!(teichmuller(4, &r).unwrap(), r.from_int(-1));
        let w = teichmuller(2, &r).unwrap();
        assert_eq!(w.residue(), 2);
        assert_eq!(w.pow(4), r.one());
        assert_eq!(w.pow(5), w);
        assert_eq!(teichmuller(0, &r), Err(PadicError::NonUnit));
    }

    #[test]
    fn traces() {
        for p in [3u64, 5, 7] {
            let r = ring(p);
            let md = r.modulus();
            assert_eq!(trace(&r.one()).value, (p - 1) as u128);
            assert_eq!(trace(&r.zeta()).value, md.from_i64(-1));
            assert_eq!(trace(&r.pi()).value, p as u128);
        }
    }

    #[test]
    fn log_basics() {
        let r = ring(3);
        assert_eq!(exact_valuation(&log_one_unit(&r.one()).unwrap()), None);
        let l = log_one_unit(&r.from_int(4)).unwrap();
        assert!(l.pi_valuation().lower_bound() >= 2);
        assert_eq!(log_one_unit(&r.from_int(2)), Err(PadicError::NotOneUnit));
    }

    #[test]
    fn log_of_product() {
        let r = ring(5);
        let a = r.one().add(&r.pi().scale_int(3));
        let b = r.one().add(&r.pi().pow(2).scale_int(7)).add(&r.from_int(5));
        let lhs = log_one_unit(&a.mul(&b)).unwrap();
        let rhs = log_one_unit(&a).unwrap().add(&log_one_unit(&b).unwrap());
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn p_three_values() {
        let r = ring(3);
        let pi = r.pi();
        let two = r.from_int(2);
        assert_eq!(symbol_zeta(&two.add(&pi)).unwrap().value, 1);
        assert_eq!(symbol_zeta(&two.add(&pi.scale_int(2))).unwrap().value, 0);
        assert_eq!(symbol_zeta(&r.one().add(&pi.scale_int(2))).unwrap().value, 0);
        assert_eq!(symbol_zeta(&pi), Err(PadicError::NonUnit));
    }

    #[test]
    fn closed_form_examples() {
        let r = ring(5);
        assert_eq!(symbol_zeta(&r.from_int(6)).unwrap().value, 4);
        assert_eq!(symbol_zeta(&r.from_int(32)).unwrap().value, 0);
        assert_eq!(symbol_zeta(&r.from_int(37)).unwrap().value, 2);
    }
}
