use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::base::{BaseDescriptor, BaseKind};
use super::expr::AbGroupExpr;
use super::AssemblyError;
use crate::padic::quaternion_trivial_over_q;
use crate::witness::{find_t_nonzero, verify_certificate, Certificate, WitnessConfig, WitnessKind};

/// Summands `Z/2` for `p ≡ 3 mod 4` and `Z/4` otherwise, over `P ∪ {-1}`.
fn mod_four_part(primes: &BTreeSet<u64>) -> AbGroupExpr {
    // -1 ≡ 3 mod 4
    let mut out = AbGroupExpr::cyclic(2);
    for &p in primes {
        out = out.sum(&AbGroupExpr::cyclic(if p % 4 == 3 { 2 } else { 4 }));
    }
    out
}

/// The 2-primary part of `Br'` over `Z_P`.
pub fn two_primary_brauer(primes: &[u64]) -> Result<AbGroupExpr, AssemblyError> {
    let kind = BaseKind::zp(primes)?;
    let BaseKind::ZP(set) = &kind else { unreachable!() };
    let base = BaseDescriptor::new(kind.clone())?;
    Ok(AbGroupExpr::sum_all([
        &base.h1_part(2)?,
        &AbGroupExpr::cyclic(2),
        &base.br_part(2)?,
        &mod_four_part(set),
    ]))
}

/// The `p`-primary part for odd `p`. Over `Z[1/2]` with `p` not inverted the
/// answer is `0`, which rests on a non-extending class; a nonzero-kind
/// witness for `p` is found and verified first.
pub fn p_primary_brauer(base: &BaseDescriptor, p: u64) -> Result<AbGroupExpr, AssemblyError> {
    if base.kind.is_z_half() && p != 2 {
        let cert = find_t_nonzero(p, &WitnessConfig::default())
            .map_err(|e| AssemblyError::MissingWitness(format!("p = {p}: {e}")))?;
        return p_primary_brauer_with(base, p, Some(&cert));
    }
    p_primary_brauer_with(base, p, None)
}

/// As [`p_primary_brauer`], with the witness supplied by the caller.
pub fn p_primary_brauer_with(
    base: &BaseDescriptor,
    p: u64,
    witness: Option<&Certificate>,
) -> Result<AbGroupExpr, AssemblyError> {
    if p == 2 || !crate::padic::is_prime(p) {
        return Err(AssemblyError::UnsupportedP(p));
    }
    if let BaseKind::ZP(ps) = &base.kind {
        if !ps.contains(&p) {
            if !base.kind.is_z_half() {
                return Err(AssemblyError::UnsupportedP(p));
            }
            let cert = witness.ok_or_else(|| AssemblyError::MissingWitness(format!("p = {p}")))?;
            let report = verify_certificate(cert);
            if cert.p != p.to_string() || cert.kind != WitnessKind::Nonzero || !report.passed {
                return Err(AssemblyError::MissingWitness(format!("certificate does not verify for p = {p}")));
            }
            return Ok(AbGroupExpr::zero());
        }
    }
    Ok(base.br_part(p)?.sum(&base.h1_part(p)?))
}

/// The whole Brauer group, for the bases where every primary part is known.
pub fn full_brauer(base: &BaseDescriptor) -> Result<AbGroupExpr, AssemblyError> {
    match &base.kind {
        BaseKind::ZP(_) if base.kind.is_z_half() => two_primary_brauer(&[2]),
        BaseKind::ZP(_) => Err(AssemblyError::UnsupportedBase(format!(
            "{}: odd primes outside P are not determined",
            base.kind
        ))),
        BaseKind::Q => Ok(AbGroupExpr::sum_all([
            &AbGroupExpr::atom("Br(Q)"),
            &AbGroupExpr::atom("H^1(Q,Q/Z)"),
            &AbGroupExpr::cyclic(2),
            &mod_four_part(&[2].into()),
        ])),
        BaseKind::AlgClosed(_) => {
            let inf = super::spectral::apply_differentials(&super::spectral::e2_page(base)?)?;
            Ok(inf.total_degree_two())
        }
    }
}

/// `Z/4 ⊕ Pic(S)`; the `Z/4` is generated by the Hodge bundle λ.
pub fn picard_group(base: &BaseDescriptor) -> Result<AbGroupExpr, AssemblyError> {
    Ok(AbGroupExpr::cyclic(4).sum(&base.pic()?))
}

/// A subgroup of an `F_2`-vector space with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedGroup {
    pub group: AbGroupExpr,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Greedy `F_2` basis of a subspace given by its elements as bitmasks.
fn basis(elements: &[u32]) -> Vec<u32> {
    let mut reduced: Vec<u32> = Vec::new();
    let mut chosen = Vec::new();
    for &e in elements {
        let mut x = e;
        for &r in &reduced {
            x = x.min(x ^ r);
        }
        if x != 0 {
            reduced.push(x);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            chosen.push(e);
        }
    }
    chosen
}

/// `G = {u : (-1, u) splits}` inside units mod squares of `Z_P`, and
/// `G' = {(u, ε) : (-1, u) = (-1, ε)}`, with `ε = ±1`.
pub fn compute_g_and_gprime(primes: &[u64]) -> Result<(GeneratedGroup, GeneratedGroup), AssemblyError> {
    let kind = BaseKind::zp(primes)?;
    let BaseKind::ZP(set) = kind else { unreachable!() };
    // F_2-basis of units mod squares: -1 then the primes of P
    let gens: Vec<i64> = std::iter::once(-1).chain(set.iter().map(|&p| p as i64)).collect();
    let value = |mask: u32| -> i64 {
        gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g).product()
    };
    let minus_one = rat(-1);
    let splits = |u: i64| -> Result<bool, AssemblyError> {
        quaternion_trivial_over_q(&minus_one, &rat(u)).map_err(|e| AssemblyError::BadP(e.to_string()))
    };
    let mut g = Vec::new();
    let mut gp = Vec::new();
    for mask in 0..1u32 << gens.len() {
        let u = value(mask);
        if splits(u)? {
            g.push(mask);
        }
        // (-1, u) = (-1, ε) iff (-1, uε) splits; ε = -1 is the extra bit
        for eps in [0u32, 1] {
            let ue = if eps == 1 { -u } else { u };
            if splits(ue)? {
                gp.push(mask | eps << gens.len());
            }
        }
    }
    let show_g = |m: u32| value(m).to_string();
    let show_gp = |m: u32| {
        let eps = if m >> gens.len() & 1 == 1 { -1 } else { 1 };
        format!("({}, {eps})", value(m & ((1 << gens.len()) - 1)))
    };
    let make = |elems: &[u32], show: &dyn Fn(u32) -> String| {
        let b = basis(elems);
        GeneratedGroup {
            group: AbGroupExpr::cyclic_power(2, b.len()),
            generators: b.iter().map(|&m| show(m)).collect(),
            elements: elems.iter().map(|&m| show(m)).collect(),
        }
    };
    Ok((make(&g, &show_g), make(&gp, &show_gp)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &AbGroupExpr) -> String {
        e.to_string()
    }

    #[test]
    fn two_primary_values() {
        let cases: [(&[u64], &str); 4] = [
            (&[2], "Q_2/Z_2 (+) (Z/2)^4 (+) Z/4"),
            (&[2, 3], "(Q_2/Z_2)^2 (+) (Z/2)^6 (+) Z/4"),
            (&[2, 5], "(Q_2/Z_2)^2 (+) (Z/2)^4 (+) (Z/4)^3"),
            (&[2, 3, 5, 7], "(Q_2/Z_2)^4 (+) (Z/2)^8 (+) (Z/4)^3"),
        ];
        for (p, want) in cases {
            assert_eq!(s(&two_primary_brauer(p).unwrap()), want, "{p:?}");
        }
        assert!(matches!(two_primary_brauer(&[3]), Err(AssemblyError::BadP(_))));
    }

    #[test]
    fn full_values() {
        let zh = BaseDescriptor::parse("ZP:2").unwrap();
        assert_eq!(s(&full_brauer(&zh).unwrap()), "Q_2/Z_2 (+) (Z/2)^4 (+) Z/4");
        for c in ["algclosed:0", "algclosed:5", "algclosed:3"] {
            assert_eq!(s(&full_brauer(&BaseDescriptor::parse(c).unwrap()).unwrap()), "Z/2");
        }
        let q = full_brauer(&BaseDescriptor::parse("Q").unwrap()).unwrap();
        assert_eq!(s(&q), "Br(Q) (+) H^1(Q,Q/Z) (+) (Z/2)^2 (+) Z/4");
        assert!(q.is_symbolic());
        assert!(matches!(
            full_brauer(&BaseDescriptor::parse("ZP:2,3").unwrap()),
            Err(AssemblyError::UnsupportedBase(_))
        ));
    }

    #[test]
    fn odd_primary() {
        for p in [3, 5, 7] {
            let b = BaseDescriptor::new(BaseKind::zp(&[2, p]).unwrap()).unwrap();
            assert_eq!(p_primary_brauer(&b, p).unwrap(), AbGroupExpr::divisible(p, 2));
        }
        let q = BaseDescriptor::parse("Q").unwrap();
        assert_eq!(s(&p_primary_brauer(&q, 5).unwrap()), "Br(Q)[5^inf] (+) H^1(Q,Q/Z)[5^inf]");
        let zh = BaseDescriptor::parse("ZP:2").unwrap();
        assert!(p_primary_brauer(&zh, 3).unwrap().is_zero());
        assert!(matches!(p_primary_brauer_with(&zh, 3, None), Err(AssemblyError::MissingWitness(_))));
        // a zero-kind certificate is not evidence
        let zero = crate::witness::find_t_zero(3, &WitnessConfig::default()).unwrap();
        assert!(p_primary_brauer_with(&zh, 3, Some(&zero)).is_err());
        let wrong_p = find_t_nonzero(5, &WitnessConfig::default()).unwrap();
        assert!(p_primary_brauer_with(&zh, 3, Some(&wrong_p)).is_err());
        let alg = BaseDescriptor::parse("algclosed:0").unwrap();
        assert!(p_primary_brauer(&alg, 3).unwrap().is_zero());
    }

    #[test]
    fn picard() {
        for b in ["ZP:2", "Q", "algclosed:0", "ZP:2,3"] {
            assert_eq!(s(&picard_group(&BaseDescriptor::parse(b).unwrap()).unwrap()), "Z/4");
        }
    }

    #[test]
    fn g_over_z_half() {
        let (g, gp) = compute_g_and_gprime(&[2]).unwrap();
        assert_eq!(s(&g.group), "Z/2");
        assert_eq!(g.generators, ["2"]);
        assert_eq!(g.elements, ["1", "2"]);
        assert_eq!(s(&gp.group), "(Z/2)^2");
        assert!(gp.elements.contains(&"(-1, -1)".to_string()));
    }

    #[test]
    fn three_is_not_in_g() {
        let (g, gp) = compute_g_and_gprime(&[2, 3]).unwrap();
        assert!(!g.elements.contains(&"3".to_string()));
        assert_eq!(g.elements, ["1", "2"]);
        assert_eq!(gp.elements.len(), 2 * g.elements.len());
        let (g, _) = compute_g_and_gprime(&[2, 5]).unwrap();
        // -1 is a square mod 5
        assert!(g.elements.contains(&"5".to_string()));
    }
}
