use serde::Serialize;

use super::base::{BaseDescriptor, BaseKind};
use super::expr::AbGroupExpr;
use super::formulas::{compute_g_and_gprime, full_brauer, p_primary_brauer, picard_group, two_primary_brauer};
use super::spectral::{apply_differentials, e2_page, kummer_check, DEFAULT_TRUNCATION};
use super::AssemblyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerReport {
    pub base: String,
    pub brauer: String,
    /// False when only some primary parts are determined.
    pub complete: bool,
    pub picard: String,
    pub checks: Vec<Check>,
}

impl BrauerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// Evaluates the Brauer group of the base together with the cross-checks
/// that apply to it.
pub fn brauer_report(base: &BaseDescriptor) -> Result<BrauerReport, AssemblyError> {
    let picard = picard_group(base)?;
    let mut checks = vec![check("picard", picard.cyclic_factors().contains(&4), format!("Pic = {picard}"))];
    let (brauer, complete) = match &base.kind {
        BaseKind::ZP(ps) if !base.kind.is_z_half() => {
            let list: Vec<u64> = ps.iter().copied().collect();
            let mut g = two_primary_brauer(&list)?;
            for &p in ps.iter().filter(|&&p| p != 2) {
                g = g.sum(&p_primary_brauer(base, p)?);
            }
            (g, false)
        }
        _ => (full_brauer(base)?, true),
    };

    if let BaseKind::ZP(ps) = &base.kind {
        let list: Vec<u64> = ps.iter().copied().collect();
        let page = e2_page(base)?;
        let inf = apply_differentials(&page)?;
        let (g, gp) = compute_g_and_gprime(&list)?;
        checks.push(check(
            "g-prime-splits",
            gp.group == g.group.sum(&AbGroupExpr::cyclic(2)),
            format!("G = {} generated by {:?}; G' = {}", g.group, g.generators, gp.group),
        ));
        let e02 = page.entry(0, 2).cloned().unwrap_or_default();
        let rest = e02.remove_summand(&base.br_part(2)?.sum(&g.group));
        let want = base.h1_part(2)?.sum(&AbGroupExpr::cyclic(2));
        checks.push(check(
            "cokernel",
            rest.as_ref() == Some(&want),
            format!("E2^{{0,2}} = {e02}; quotient by Br and G = {}", rest.map(|r| r.to_string()).unwrap_or("-".into())),
        ));
        // 0 → E∞^{2,0} → ₂Br → E∞^{0,2} → 0, counted at the truncation level
        let two = two_primary_brauer(&list)?;
        let lhs = two.n_torsion(DEFAULT_TRUNCATION)?.order()?;
        let rhs = inf.e20.order()? * inf.e02.n_torsion(DEFAULT_TRUNCATION)?.order()?;
        checks.push(check(
            "e-infinity-orders",
            lhs == rhs,
            format!("|Br[{DEFAULT_TRUNCATION}]| = {lhs}, |E∞^{{2,0}}|·|E∞^{{0,2}}[{DEFAULT_TRUNCATION}]| = {rhs}"),
        ));
        if base.kind.is_z_half() {
            let n = DEFAULT_TRUNCATION.trailing_zeros();
            let order = brauer.n_torsion(DEFAULT_TRUNCATION)?.order()?;
            checks.push(check(
                "truncation",
                order == 1 << (n + 6),
                format!("|Br[2^{n}]| = {order}"),
            ));
        }
    }

    if let BaseKind::AlgClosed(_) = &base.kind {
        let inf = apply_differentials(&e2_page(base)?)?;
        let total = inf.total_degree_two();
        checks.push(check(
            "spectral-sequence",
            total == brauer,
            format!("E∞ total degree 2 = {total}"),
        ));
        for n in 2..=DEFAULT_TRUNCATION.trailing_zeros() {
            let r = kummer_check(n)?;
            checks.push(check(
                &format!("kummer-2^{n}"),
                r.passed,
                format!("{} with orders {:?}", r.terms.join(" -> "), r.orders),
            ));
        }
        // Br' sits inside Z/2 ⊕ Z/2
        let bound = brauer.order()?;
        checks.push(check("upper-bound", 4 % bound == 0, format!("|Br| = {bound} divides 4")));
    }

    Ok(BrauerReport {
        base: base.kind.to_string(),
        brauer: brauer.to_string(),
        complete,
        picard: picard.to_string(),
        checks,
    })
}
