use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Parameters};
use super::WitnessError;
use crate::moduli::{s_of_t, solve_t_from_c};
use crate::padic::{
    inv_mod_prime, is_prime, parse_element, sqrt_mod_prime, symbol_zeta, to_literal, CycloElement,
    CycloRing, Valuation,
};

pub const DEFAULT_MAX_PRIME: u64 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Nonzero,
    Zero,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Nonzero => "nonzero",
            WitnessKind::Zero => "zero",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WitnessKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonzero" => Ok(WitnessKind::Nonzero),
            "zero" => Ok(WitnessKind::Zero),
            _ => Err(format!("unknown witness kind {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessConfig {
    /// π-adic precision; the ring default when absent.
    pub precision: Option<u32>,
    /// Replaces `m ≡ 3·4⁻¹` for `p > 3`; `4m + 1` must be a nonzero square.
    pub m_override: Option<i64>,
    pub max_prime: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self { precision: None, m_override: None, max_prime: DEFAULT_MAX_PRIME }
    }
}

impl WitnessConfig {
    fn ring(&self, p: u64) -> Result<CycloRing, WitnessError> {
        if p < 3 || !is_prime(p) {
            return Err(WitnessError::InvalidPrime(p));
        }
        if p > self.max_prime {
            return Err(WitnessError::PrimeOutOfRange { p, bound: self.max_prime });
        }
        Ok(match self.precision {
            Some(n) => CycloRing::new(p, n)?,
            None => CycloRing::with_default_precision(p)?,
        })
    }
}

/// `m ∈ [1, p−1]` with `m ≡ 3·4⁻¹`, so that `4m + 1 ≡ 4`.
pub fn default_m(p: u64) -> u64 {
    3 * inv_mod_prime(4, p).unwrap() % p
}

fn choose_m(p: u64, cfg: &WitnessConfig) -> Result<i64, WitnessError> {
    match cfg.m_override {
        Some(m) => {
            let r = (4 * m + 1).rem_euclid(p as i64) as u64;
            if m % p as i64 == 0 || r == 0 || sqrt_mod_prime(r, p).is_none() {
                return Err(WitnessError::BadOverride { p, m });
            }
            Ok(m)
        }
        None => Ok(default_m(p) as i64),
    }
}

/// The unit root with the lexicographically smaller coefficient vector.
fn unit_root(c: &CycloElement) -> Result<CycloElement, WitnessError> {
    let mut roots: Vec<CycloElement> = solve_t_from_c(c)?
        .into_iter()
        .filter(|r| r.unit)
        .map(|r| r.t)
        .collect();
    roots.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    roots.into_iter().next().ok_or(WitnessError::NoUnitRoot)
}

fn certify(
    ring: &CycloRing,
    kind: WitnessKind,
    parameters: Parameters,
    t: &CycloElement,
) -> Result<Certificate, WitnessError> {
    // the certificate fixes t as an exact literal; everything downstream is
    // recomputed from it
    let t = parse_element(&to_literal(t), ring)?;
    let s = s_of_t(&t)?;
    let disc = crate::moduli::legendre_discriminant(&t);
    debug_assert_eq!(disc.pi_valuation(), Valuation::Exact(0));
    let e = symbol_zeta(&s)?;
    Ok(Certificate {
        p: ring.p().to_string(),
        kind,
        parameters,
        t: to_literal(&t),
        s: to_literal(&s),
        discriminant_valuation: "0".into(),
        symbol_exponent: e.value.to_string(),
        precision: ring.prec().to_string(),
    })
}

/// `t` with unit discriminant and `(ζ_p, t/(t−1)²) ≠ 1`.
pub fn find_t_nonzero(p: u64, cfg: &WitnessConfig) -> Result<Certificate, WitnessError> {
    let ring = cfg.ring(p)?;
    let (a, m) = if p == 3 { (1, -1) } else { (1, choose_m(p, cfg)?) };
    let c = ring.from_int(m).pow(p).add(&ring.from_int(a * p as i64));
    let t = unit_root(&c)?;
    let params = Parameters { a: Some(a.to_string()), m: Some(m.to_string()), t: None };
    certify(&ring, WitnessKind::Nonzero, params, &t)
}

/// `t` with unit discriminant and `(ζ_p, t/(t−1)²) = 1`.
pub fn find_t_zero(p: u64, cfg: &WitnessConfig) -> Result<Certificate, WitnessError> {
    let ring = cfg.ring(p)?;
    if p == 3 {
        // 2 + 2π
        let t = ring.from_int(2).add(&ring.pi().scale_int(2));
        let params = Parameters { a: None, m: None, t: Some(to_literal(&t)) };
        return certify(&ring, WitnessKind::Zero, params, &t);
    }
    let m = choose_m(p, cfg)?;
    let c = ring.from_int(m).pow(p);
    let t = unit_root(&c)?;
    let params = Parameters { a: None, m: Some(m.to_string()), t: None };
    certify(&ring, WitnessKind::Zero, params, &t)
}

pub fn find_t(p: u64, kind: WitnessKind, cfg: &WitnessConfig) -> Result<Certificate, WitnessError> {
    match kind {
        WitnessKind::Nonzero => find_t_nonzero(p, cfg),
        WitnessKind::Zero => find_t_zero(p, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_m_values() {
        assert_eq!(default_m(5), 2);
        assert_eq!(default_m(7), 6);
        assert_eq!(default_m(13), 4);
    }

    #[test]
    fn p_three() {
        let cfg = WitnessConfig::default();
        let n = find_t_nonzero(3, &cfg).unwrap();
        assert_eq!(n.t, "2");
        assert_eq!(n.s, "2");
        assert_ne!(n.symbol_exponent, "0");
        let z = find_t_zero(3, &cfg).unwrap();
        assert_eq!(z.t, "4 - 2*z");
        assert_eq!(z.symbol_exponent, "0");
    }

    #[test]
    fn p_five() {
        let cfg = WitnessConfig::default();
        let n = find_t_nonzero(5, &cfg).unwrap();
        assert_eq!(n.parameters.m.as_deref(), Some("2"));
        assert_eq!(n.symbol_exponent, "2");
        assert_eq!(find_t_zero(5, &cfg).unwrap().symbol_exponent, "0");
    }

    #[test]
    fn bad_inputs() {
        let cfg = WitnessConfig::default();
        assert_eq!(find_t_nonzero(2, &cfg), Err(WitnessError::InvalidPrime(2)));
        assert_eq!(find_t_nonzero(9, &cfg), Err(WitnessError::InvalidPrime(9)));
        assert_eq!(
            find_t_zero(101, &cfg),
            Err(WitnessError::PrimeOutOfRange { p: 101, bound: 97 })
        );
        let over = WitnessConfig { m_override: Some(1), ..cfg };
        // 4·1 + 1 = 5 ≡ 0 mod 5
        assert_eq!(find_t_nonzero(5, &over), Err(WitnessError::BadOverride { p: 5, m: 1 }));
        // 4·5 + 1 = 21 ≡ 0 mod 7
        let over = WitnessConfig { m_override: Some(5), ..cfg };
        assert!(find_t_nonzero(7, &over).is_err());
    }

    #[test]
    fn override_follows_closed_form() {
        // 4·2 + 1 = 3²
        let cfg = WitnessConfig { m_override: Some(2), ..WitnessConfig::default() };
        let n = find_t_nonzero(11, &cfg).unwrap();
        let expect = (11 - inv_mod_prime(2, 11).unwrap()) % 11;
        assert_eq!(n.symbol_exponent, expect.to_string());
    }
}
