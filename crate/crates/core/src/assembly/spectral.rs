use serde::Serialize;

use super::base::{BaseDescriptor, BaseKind};
use super::expr::AbGroupExpr;
use super::formulas::{compute_g_and_gprime, full_brauer, picard_group};
use super::AssemblyError;

/// Torsion level used for order bookkeeping unless told otherwise.
pub const DEFAULT_TRUNCATION: u64 = 1 << 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Entry {
    pub i: u8,
    pub j: u8,
    pub group: AbGroupExpr,
}

/// `E_2^{i,j}` of the 2-local Hochschild-Serre sequence for the `C_2`-cover,
/// for `i ≤ 3`, `j ≤ 2` (row 2 only at `i = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Page {
    pub base: String,
    pub entries: Vec<E2Entry>,
    pub differentials: Vec<String>,
    #[serde(skip)]
    pic: AbGroupExpr,
    #[serde(skip)]
    units_mod_2: AbGroupExpr,
}

impl E2Page {
    pub fn entry(&self, i: u8, j: u8) -> Option<&AbGroupExpr> {
        self.entries.iter().find(|e| e.i == i && e.j == j).map(|e| &e.group)
    }
}

/// `G'` for the base, as an expression.
fn g_prime(base: &BaseDescriptor) -> Result<AbGroupExpr, AssemblyError> {
    match &base.kind {
        BaseKind::ZP(ps) => {
            let ps: Vec<u64> = ps.iter().copied().collect();
            Ok(compute_g_and_gprime(&ps)?.1.group)
        }
        BaseKind::Q => Ok(AbGroupExpr::atom("G'(Q)")),
        // every unit is a square, so G = 0 and G' = {±1}
        BaseKind::AlgClosed(_) => Ok(AbGroupExpr::cyclic(2)),
    }
}

pub fn e2_page(base: &BaseDescriptor) -> Result<E2Page, AssemblyError> {
    let mu2 = base.mu2()?;
    let pic = base.pic()?;
    let units = base.units()?;
    let units_mod_2 = base.units_mod_2()?;
    let pic_tors = if pic.is_zero() { AbGroupExpr::zero() } else { pic.n_torsion(2)? };
    let pic_mod = if pic.is_zero() { AbGroupExpr::zero() } else { pic.mod_n(2)? };
    let row2 = AbGroupExpr::sum_all([&base.br_part(2)?, &base.h1_part(2)?, &g_prime(base)?]);
    let groups = [
        (0, 0, units.localize(2).sum(&AbGroupExpr::free(1))),
        (1, 0, mu2.clone()),
        (2, 0, units_mod_2.clone()),
        (3, 0, mu2.clone()),
        (0, 1, pic.localize(2).sum(&mu2)),
        (1, 1, pic_tors.sum(&mu2)),
        (2, 1, pic_mod.sum(&mu2)),
        (0, 2, row2),
    ];
    Ok(E2Page {
        base: base.kind.to_string(),
        entries: groups.into_iter().map(|(i, j, group)| E2Entry { i, j, group }).collect(),
        differentials: vec![
            "d2^{0,1} = 0".into(),
            "d2^{1,1} onto E2^{3,0}".into(),
            "d2^{0,2} = 0 when Pic/2 = 0".into(),
        ],
        pic,
        units_mod_2,
    })
}

/// The `E_∞` terms on the diagonal of total degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EInfinity {
    pub e20: AbGroupExpr,
    pub e11: AbGroupExpr,
    pub e02: AbGroupExpr,
}

impl EInfinity {
    /// Sum of the graded pieces. Equal to the abutment up to extension.
    pub fn total_degree_two(&self) -> AbGroupExpr {
        AbGroupExpr::sum_all([&self.e20, &self.e11, &self.e02])
    }
}

pub fn apply_differentials(page: &E2Page) -> Result<EInfinity, AssemblyError> {
    if !page.pic.is_zero() {
        return Err(AssemblyError::UnsupportedBase(format!("{}: Pic is nonzero", page.base)));
    }
    let e02 = page.entry(0, 2).cloned().ok_or_else(|| AssemblyError::MissingTableEntry("E2^{0,2}".into()))?;
    // E2^{1,1} = μ2 maps isomorphically onto E2^{3,0} = μ2
    Ok(EInfinity { e20: page.units_mod_2.clone(), e11: AbGroupExpr::zero(), e02 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub terms: Vec<String>,
    pub orders: Vec<u64>,
    pub passed: bool,
}

/// Exact sequence `0 → T_0 → … → T_k → 0`: the alternating product of
/// orders is 1. Terms are first cut down to their `level`-torsion when a
/// level is given.
pub fn exact_sequence_order_check(terms: &[AbGroupExpr], level: Option<u64>) -> Result<OrderReport, AssemblyError> {
    let mut orders = Vec::with_capacity(terms.len());
    for t in terms {
        let t = match level {
            Some(n) => t.n_torsion(n)?,
            None => t.clone(),
        };
        orders.push(t.order().map_err(|_| AssemblyError::InfiniteTerm(t.to_string()))?);
    }
    let (mut even, mut odd) = (1u128, 1u128);
    for (i, &o) in orders.iter().enumerate() {
        if i % 2 == 0 {
            even *= o as u128;
        } else {
            odd *= o as u128;
        }
    }
    Ok(OrderReport { terms: terms.iter().map(|t| t.to_string()).collect(), orders, passed: even == odd })
}

/// `0 → Pic/2^n → H²(μ_{2^n}) → Br[2^n] → 0` over an algebraically closed
/// field, `n ≥ 2`.
pub fn kummer_check(n: u32) -> Result<OrderReport, AssemblyError> {
    if n < 2 {
        return Err(AssemblyError::BadLevel(n));
    }
    let base = BaseDescriptor::new(BaseKind::AlgClosed(0))?;
    let level = 1u64 << n;
    let left = picard_group(&base)?.mod_n(level)?;
    let right = full_brauer(&base)?.n_torsion(level)?;
    let middle: AbGroupExpr = "Z/2 (+) Z/4".parse()?;
    exact_sequence_order_check(&[left, middle, right], None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_half_page() {
        let b = BaseDescriptor::parse("ZP:2").unwrap();
        let page = e2_page(&b).unwrap();
        assert_eq!(page.entry(0, 2).unwrap().to_string(), "Q_2/Z_2 (+) (Z/2)^4");
        assert_eq!(page.entry(1, 1).unwrap().to_string(), "Z/2");
        assert_eq!(page.entry(0, 0).unwrap().to_string(), "Z^2 (+) Z/2");
        let inf = apply_differentials(&page).unwrap();
        assert_eq!(inf.e20.to_string(), "(Z/2)^2");
        assert!(inf.e11.is_zero());
    }

    #[test]
    fn z_sixth_e20() {
        let b = BaseDescriptor::parse("ZP:2,3").unwrap();
        let inf = apply_differentials(&e2_page(&b).unwrap()).unwrap();
        assert_eq!(inf.e20.to_string(), "(Z/2)^3");
    }

    #[test]
    fn alg_closed_collapses() {
        let b = BaseDescriptor::parse("algclosed:0").unwrap();
        let page = e2_page(&b).unwrap();
        assert_eq!(page.entry(0, 2).unwrap().to_string(), "Z/2");
        let inf = apply_differentials(&page).unwrap();
        assert_eq!(inf.total_degree_two().to_string(), "Z/2");
    }

    #[test]
    fn order_checks() {
        let g = |s: &str| s.parse::<AbGroupExpr>().unwrap();
        assert!(exact_sequence_order_check(&[g("Z/4"), g("Z/2 (+) Z/4"), g("Z/2")], None).unwrap().passed);
        assert!(exact_sequence_order_check(&[g("Z/2"), g("(Z/2)^2"), g("Z/2")], None).unwrap().passed);
        assert!(!exact_sequence_order_check(&[g("Z/4"), g("Z/4"), g("Z/2")], None).unwrap().passed);
        assert!(matches!(
            exact_sequence_order_check(&[g("Z")], None),
            Err(AssemblyError::InfiniteTerm(_))
        ));
        for n in 2..8 {
            let r = kummer_check(n).unwrap();
            assert!(r.passed);
            assert_eq!(r.terms, ["Z/4", "Z/2 (+) Z/4", "Z/2"]);
        }
        assert!(kummer_check(1).is_err());
    }

    #[test]
    fn cokernel_identity() {
        for ps in [&[2u64][..], &[2, 3], &[2, 5], &[2, 3, 5, 7], &[2, 13], &[2, 3, 5, 7, 11, 13]] {
            let b = BaseDescriptor::new(BaseKind::zp(ps).unwrap()).unwrap();
            let page = e2_page(&b).unwrap();
            let g = compute_g_and_gprime(ps).unwrap().0.group;
            let rest = page.entry(0, 2).unwrap().remove_summand(&b.br_part(2).unwrap().sum(&g)).unwrap();
            assert_eq!(rest, b.h1_part(2).unwrap().sum(&AbGroupExpr::cyclic(2)), "{ps:?}");
        }
    }
}
