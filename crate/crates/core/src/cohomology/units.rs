use crate::intlinalg::{FinAbGroup, IntMatrix, LatticeCoords};

use super::module::{cohomology, CyclicModule};
use super::reps::{builtin_rep, RepName};
use super::CohomologyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitsRow {
    pub degree: u32,
    pub total: FinAbGroup,
    pub base: FinAbGroup,
}

/// Comparison of `H^p(C₂, G_m(S) ⊕ ρ̃)` with `H^p(C₂, G_m(S))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitsReport {
    pub units: FinAbGroup,
    pub rows: Vec<UnitsRow>,
    pub h0_total: FinAbGroup,
    pub h0_rho_tilde: FinAbGroup,
    pub h0_surjects: bool,
}

/// Checks the long exact sequence of
/// `0 → G_m(S) → G_m(S) ⊕ ρ̃|_{C₂} → ρ̃|_{C₂} → 0`
/// with `C₂` acting trivially on `G_m(S)`: higher cohomology agrees and the
/// invariants map onto `H⁰(C₂, ρ̃) = Z`.
pub fn units_sequence_check(units: &FinAbGroup) -> Result<UnitsReport, CohomologyError> {
    let base = CyclicModule::trivial(2, units);
    let rho = builtin_rep(RepName::RhoTildeRestricted).module;
    let total = base.direct_sum(&rho);
    total.validate()?;

    let mut rows = Vec::new();
    for p in 1..=4 {
        let row = UnitsRow {
            degree: p,
            total: cohomology(&total, p)?,
            base: cohomology(&base, p)?,
        };
        if row.total != row.base {
            return Err(CohomologyError::ModelMismatch(format!(
                "H^{p}: {} vs {}",
                row.total, row.base
            )));
        }
        rows.push(row);
    }

    // project invariant vectors onto the ρ̃ coordinates and compare lattices
    let k = base.rank();
    let inv = total.invariant_lattice();
    let projected: Vec<Vec<_>> = (0..inv.cols())
        .map(|j| inv.column(j)[k..].to_vec())
        .collect();
    let projected = IntMatrix::from_columns(&projected, rho.rank());
    let target = rho.invariant_lattice();
    let covers = {
        let lc = LatticeCoords::new(&projected);
        (0..target.cols()).all(|j| lc.contains(&target.column(j)))
    };
    let h0_rho_tilde = cohomology(&rho, 0)?;
    if !covers || h0_rho_tilde != FinAbGroup::free(1) {
        return Err(CohomologyError::ModelMismatch(
            "invariants do not surject onto H^0(C2, rho_tilde)".into(),
        ));
    }
    Ok(UnitsReport {
        units: units.clone(),
        rows,
        h0_total: cohomology(&total, 0)?,
        h0_rho_tilde,
        h0_surjects: covers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_of_z_half() {
        let r = units_sequence_check(&FinAbGroup::from_u64(&[2], 1)).unwrap();
        assert_eq!(r.rows[0].total, FinAbGroup::cyclic(2));
        assert_eq!(r.h0_total, FinAbGroup::from_u64(&[2], 2));
        assert!(r.h0_surjects);
    }

    #[test]
    fn field_like_units() {
        let r = units_sequence_check(&FinAbGroup::cyclic(2)).unwrap();
        assert_eq!(r.rows[1].total, FinAbGroup::cyclic(2));
    }

    #[test]
    fn no_units() {
        let r = units_sequence_check(&FinAbGroup::trivial()).unwrap();
        assert!(r.rows.iter().all(|row| row.total.is_trivial()));
    }
}
