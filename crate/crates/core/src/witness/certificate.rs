use serde::{Deserialize, Serialize};

use super::finder::WitnessKind;
use crate::moduli::{legendre_discriminant, s_of_t};
use crate::padic::{
    inv_mod_prime, is_prime, parse_element, symbol_zeta, to_literal, CycloElement, CycloRing,
    SymbolExponent, Valuation,
};

/// How the witness was produced: `(a, m)` with `c = m^p + a·p` (or `m^p`
/// when `a` is absent), or a literal `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
}

/// All numbers are decimal strings; `t` and `s` are element literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: String,
    pub kind: WitnessKind,
    pub parameters: Parameters,
    pub t: String,
    pub s: String,
    pub discriminant_valuation: String,
    pub symbol_exponent: String,
    pub precision: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub p: String,
    pub kind: String,
    pub passed: bool,
    pub checks: Vec<FieldCheck>,
}

struct Checker {
    checks: Vec<FieldCheck>,
}

impl Checker {
    fn record(&mut self, field: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(FieldCheck { field: field.into(), passed, detail: detail.into() });
        passed
    }
}

/// Values recomputed from the literal `t` in one ring.
struct Recomputed {
    s: CycloElement,
    disc: Valuation,
    exponent: Result<SymbolExponent, String>,
}

fn recompute(t_lit: &str, ring: &CycloRing) -> Result<Recomputed, String> {
    let t = parse_element(t_lit, ring).map_err(|e| e.to_string())?;
    let s = s_of_t(&t).map_err(|e| e.to_string())?;
    let disc = legendre_discriminant(&t).pi_valuation();
    let exponent = symbol_zeta(&s).map_err(|e| e.to_string());
    Ok(Recomputed { s, disc, exponent })
}

/// Replays a certificate at its stated precision and at twice that
/// precision. Every problem becomes a failed check.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let mut ck = Checker { checks: Vec::new() };
    let p = cert.p.parse::<u64>().ok().filter(|&p| p >= 3 && is_prime(p));
    let prec = cert.precision.parse::<u32>().ok();
    let rings = match (p, prec) {
        (Some(p), Some(n)) => CycloRing::new(p, n).and_then(|r| Ok((r, r.with_prec(2 * n)?))),
        _ => Err(crate::padic::PadicError::InvalidPrime(0)),
    };
    let (ring, wide) = match rings {
        Ok(r) => r,
        Err(e) => {
            ck.record("p/precision", false, format!("unusable ring parameters: {e}"));
            return finish(cert, ck);
        }
    };
    let p = ring.p();
    let (base, doubled) = match (recompute(&cert.t, &ring), recompute(&cert.t, &wide)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            ck.record("t", false, e);
            return finish(cert, ck);
        }
    };
    ck.record("t", true, cert.t.clone());

    let s_lit = to_literal(&base.s);
    let s_ok = s_lit == cert.s;
    let s_wide = parse_element(&cert.s, &wide).map(|s| s.truncate_prec(ring.prec()));
    let s_wide_ok = s_wide.map(|s| s.agrees_with(&doubled.s)).unwrap_or(false);
    ck.record(
        "s",
        s_ok && s_wide_ok,
        if s_ok { format!("recomputed, doubled precision agrees: {s_wide_ok}") } else { format!("recomputed {s_lit}") },
    );

    let unit = base.disc == Valuation::Exact(0) && doubled.disc == Valuation::Exact(0);
    ck.record(
        "discriminant_valuation",
        unit && cert.discriminant_valuation == "0",
        format!("v(16t^2(t-1)^2) = {}", base.disc),
    );

    let stated = cert.symbol_exponent.parse::<u64>().ok();
    let sym_ok = match (&base.exponent, &doubled.exponent) {
        (Ok(a), Ok(b)) => {
            let ok = a == b && stated == Some(a.value);
            ck.record("symbol_exponent", ok, format!("recomputed {} and {} at doubled precision", a.value, b.value))
        }
        (Err(e), _) | (_, Err(e)) => ck.record("symbol_exponent", false, e.clone()),
    };

    if let Some(e) = stated {
        let consistent = match cert.kind {
            WitnessKind::Nonzero => e != 0,
            WitnessKind::Zero => e == 0,
        };
        ck.record("kind", consistent, format!("{} witness with exponent {e}", cert.kind));
    }

    check_parameters(cert, &ring, &base, p, sym_ok, &mut ck);
    finish(cert, ck)
}

fn check_parameters(cert: &Certificate, ring: &CycloRing, base: &Recomputed, p: u64, sym_ok: bool, ck: &mut Checker) {
    let prm = &cert.parameters;
    if let Some(t) = &prm.t {
        let same = parse_element(t, ring).ok() == parse_element(&cert.t, ring).ok();
        ck.record("parameters.t", same, "literal t matches");
    }
    let Some(m) = prm.m.as_ref().and_then(|m| m.parse::<i64>().ok()) else {
        if prm.m.is_some() {
            ck.record("parameters.m", false, "not an integer");
        }
        return;
    };
    let a = match prm.a.as_ref().map(|a| a.parse::<i64>()) {
        Some(Ok(a)) => a,
        Some(Err(_)) => {
            ck.record("parameters.a", false, "not an integer");
            return;
        }
        None => 0,
    };
    let c = ring.from_int(m).pow(p).add(&ring.from_int(a * p as i64));
    ck.record("parameters.c", base.s.agrees_with(&c), "s equals m^p + a*p");
    if a != 0 && sym_ok {
        let closed = inv_mod_prime(m, p).map(|mi| SymbolExponent::new(p, -a * mi as i64));
        let ok = closed.is_some() && closed == base.exponent.clone().ok();
        ck.record("closed_form", ok, "exponent equals -a/m mod p");
    }
}

fn finish(cert: &Certificate, ck: Checker) -> VerificationReport {
    VerificationReport {
        p: cert.p.clone(),
        kind: cert.kind.to_string(),
        passed: !ck.checks.is_empty() && ck.checks.iter().all(|c| c.passed),
        checks: ck.checks,
    }
}

/// Verifies a JSON document holding one certificate, an array of them, or a
/// report object with a `certificates` array.
pub fn verify_json(text: &str) -> Result<Vec<VerificationReport>, String> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if let Some(inner) = value.get_mut("certificates") {
        value = inner.take();
    }
    let items = match value {
        serde_json::Value::Array(v) => v,
        v => vec![v],
    };
    items
        .into_iter()
        .map(|v| {
            let cert: Certificate = serde_json::from_value(v).map_err(|e| e.to_string())?;
            Ok(verify_certificate(&cert))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{find_t_nonzero, find_t_zero, WitnessConfig};

    #[test]
    fn round_trip() {
        let cfg = WitnessConfig::default();
        for p in [3, 5, 7] {
            for cert in [find_t_nonzero(p, &cfg).unwrap(), find_t_zero(p, &cfg).unwrap()] {
                let r = verify_certificate(&cert);
                assert!(r.passed, "{r:?}");
                let json = serde_json::to_string(&cert).unwrap();
                assert!(verify_json(&json).unwrap()[0].passed);
            }
        }
    }

    #[test]
    fn tampering_is_caught() {
        let mut cert = find_t_nonzero(5, &WitnessConfig::default()).unwrap();
        cert.symbol_exponent = "3".into();
        let r = verify_certificate(&cert);
        assert!(!r.passed);
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.field.as_str()).collect();
        assert_eq!(failed, vec!["symbol_exponent"]);

        let mut cert = find_t_zero(3, &WitnessConfig::default()).unwrap();
        cert.t = "2".into();
        assert!(!verify_certificate(&cert).passed);
        cert.p = "4".into();
        assert!(!verify_certificate(&cert).passed);
    }

    #[test]
    fn garbage_documents() {
        assert!(verify_json("{").is_err());
        assert!(verify_json("{\"p\": 3}").is_err());
    }
}
