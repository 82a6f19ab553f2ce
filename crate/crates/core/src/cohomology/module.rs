use crate::intlinalg::{lattice_quotient, kernel_basis, FinAbGroup, IntMatrix, LatticeCoords};

use super::CohomologyError;

/// Highest degree accepted by [`cohomology`]. Periodicity makes anything
/// above degree 2 redundant, so the cap only guards against typos.
pub const MAX_DEGREE: u32 = 12;

/// A module over `C_n = ⟨s⟩`: `M = Z^k / im(relations)` with `s` acting on
/// `Z^k` by `action`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    pub n: u32,
    pub relations: IntMatrix,
    pub action: IntMatrix,
}

impl CyclicModule {
    /// Builds and validates.
    pub fn new(n: u32, relations: IntMatrix, action: IntMatrix) -> Result<Self, CohomologyError> {
        let m = Self {
            n,
            relations,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    /// Free module `Z^k` with the given action.
    pub fn free(n: u32, action: IntMatrix) -> Result<Self, CohomologyError> {
        let k = action.rows();
        Self::new(n, IntMatrix::zeros(k, 0), action)
    }

    /// `M` with trivial action.
    pub fn trivial(n: u32, group: &FinAbGroup) -> Self {
        let relations = presentation(group);
        let k = relations.rows();
        Self {
            n,
            relations,
            action: IntMatrix::identity(k),
        }
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn underlying_group(&self) -> FinAbGroup {
        crate::intlinalg::cokernel(&self.relations)
    }

    pub fn validate(&self) -> Result<(), CohomologyError> {
        let k = self.action.rows();
        if self.n == 0 {
            return Err(CohomologyError::InvalidModule("group order must be positive".into()));
        }
        if self.action.cols() != k || self.relations.rows() != k {
            return Err(CohomologyError::InvalidModule(format!(
                "shape mismatch: action {}x{}, relations {}x{}",
                self.action.rows(),
                self.action.cols(),
                self.relations.rows(),
                self.relations.cols()
            )));
        }
        let rel = LatticeCoords::new(&self.relations);
        let image = self.action.mul(&self.relations);
        for j in 0..image.cols() {
            if !rel.contains(&image.column(j)) {
                return Err(CohomologyError::InvalidModule(format!(
                    "action does not preserve relation column {j}"
                )));
            }
        }
        let diff = self.action.pow(self.n).sub(&IntMatrix::identity(k));
        for j in 0..k {
            if !rel.contains(&diff.column(j)) {
                return Err(CohomologyError::InvalidModule(format!(
                    "s^{} differs from the identity on generator {j}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// `N = 1 + s + … + s^{n−1}` on the ambient lattice.
    pub fn norm_matrix(&self) -> IntMatrix {
        let k = self.rank();
        let mut acc = IntMatrix::zeros(k, k);
        let mut p = IntMatrix::identity(k);
        for _ in 0..self.n {
            acc = acc.add(&p);
            p = p.mul(&self.action);
        }
        acc
    }

    pub fn s_minus_one(&self) -> IntMatrix {
        self.action.sub(&IntMatrix::identity(self.rank()))
    }

    /// Equivariant direct sum.
    pub fn direct_sum(&self, other: &CyclicModule) -> CyclicModule {
        assert_eq!(self.n, other.n, "direct sum of modules over different groups");
        CyclicModule {
            n: self.n,
            relations: self.relations.block_diag(&other.relations),
            action: self.action.block_diag(&other.action),
        }
    }

    /// Generators of the lattice of ambient vectors whose class is fixed by `s`.
    pub fn invariant_lattice(&self) -> IntMatrix {
        self.preimage_of_relations(&self.s_minus_one())
    }

    /// Lattice `{x ∈ Z^k : f(x) ∈ im(relations)}` as generator columns.
    fn preimage_of_relations(&self, f: &IntMatrix) -> IntMatrix {
        let k = self.rank();
        let stacked = f.hcat(&self.relations);
        kernel_basis(&stacked).top_rows(k)
    }
}

/// Relations for `Z^free ⊕ ⊕ Z/dᵢ`, torsion generators first.
pub fn presentation(g: &FinAbGroup) -> IntMatrix {
    let t = g.invariant_factors().len();
    let k = t + g.free_rank();
    let mut r = IntMatrix::zeros(k, t);
    for (i, d) in g.invariant_factors().iter().enumerate() {
        r[(i, i)] = d.clone();
    }
    r
}

/// `H^i(C_n, M)` from the periodic resolution.
pub fn cohomology(m: &CyclicModule, i: u32) -> Result<FinAbGroup, CohomologyError> {
    if i > MAX_DEGREE {
        return Err(CohomologyError::DegreeTooLarge(i));
    }
    m.validate()?;
    let rel = &m.relations;
    let sm1 = m.s_minus_one();
    let (kernel_map, image_map) = if i == 0 {
        (sm1, None)
    } else if i % 2 == 1 {
        (m.norm_matrix(), Some(sm1))
    } else {
        (sm1, Some(m.norm_matrix()))
    };
    let cycles = m.preimage_of_relations(&kernel_map);
    let boundaries = match image_map {
        None => rel.clone(),
        Some(b) => b.hcat(rel),
    };
    lattice_quotient(&cycles, &boundaries).ok_or_else(|| {
        CohomologyError::InvalidModule("boundaries escape the cycle lattice".into())
    })
}

/// Same module tensored with a finitely generated abelian group, with `s`
/// acting on the first factor only. The representation must be a lattice.
pub fn tensor_with(rep: &CyclicModule, g: &FinAbGroup) -> Result<CyclicModule, CohomologyError> {
    if !rep.relations.is_zero() {
        return Err(CohomologyError::InvalidModule(
            "tensor_with needs a free underlying lattice".into(),
        ));
    }
    let k = rep.rank();
    let pres = presentation(g);
    let gens = pres.rows();
    CyclicModule::new(
        rep.n,
        IntMatrix::identity(k).kron(&pres),
        rep.action.kron(&IntMatrix::identity(gens)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triv(g: &FinAbGroup) -> CyclicModule {
        CyclicModule::trivial(2, g)
    }

    fn sgn(g: &FinAbGroup) -> CyclicModule {
        let s = CyclicModule::free(2, IntMatrix::from_i64(&[&[-1]])).unwrap();
        tensor_with(&s, g).unwrap()
    }

    #[test]
    fn trivial_integers() {
        let m = triv(&FinAbGroup::free(1));
        assert_eq!(cohomology(&m, 0).unwrap(), FinAbGroup::free(1));
        assert!(cohomology(&m, 1).unwrap().is_trivial());
        assert_eq!(cohomology(&m, 2).unwrap(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn sign_integers() {
        let m = sgn(&FinAbGroup::free(1));
        for i in 0..=4 {
            let expect = if i % 2 == 1 { FinAbGroup::cyclic(2) } else { FinAbGroup::trivial() };
            assert_eq!(cohomology(&m, i).unwrap(), expect, "degree {i}");
        }
    }

    #[test]
    fn sign_on_z4_is_minus_one() {
        let m = sgn(&FinAbGroup::cyclic(4));
        assert_eq!(m.action, IntMatrix::from_i64(&[&[-1]]));
        assert_eq!(m.relations, IntMatrix::from_i64(&[&[4]]));
    }

    #[test]
    fn rejects_bad_modules() {
        // s = 2 on Z/4 is not invertible, so s^2 = 4 = 0 ≠ 1
        let bad = CyclicModule {
            n: 2,
            relations: IntMatrix::from_i64(&[&[4]]),
            action: IntMatrix::from_i64(&[&[2]]),
        };
        assert!(matches!(cohomology(&bad, 1), Err(CohomologyError::InvalidModule(_))));
        // swapping generators of Z ⊕ Z/2 does not descend
        let bad = CyclicModule {
            n: 2,
            relations: IntMatrix::from_i64(&[&[2], &[0]]),
            action: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        };
        assert!(bad.validate().is_err());
        let ok = triv(&FinAbGroup::trivial());
        assert_eq!(cohomology(&ok, 13), Err(CohomologyError::DegreeTooLarge(13)));
    }

    #[test]
    fn order_three_rotation() {
        // Z[C_3] is induced, so positive-degree cohomology vanishes
        let rot = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let m = CyclicModule::free(3, rot).unwrap();
        assert_eq!(cohomology(&m, 0).unwrap(), FinAbGroup::free(1));
        for i in 1..=4 {
            assert!(cohomology(&m, i).unwrap().is_trivial());
        }
        // trivial Z/9 over C_3: H^odd = M[3], H^even = M/3M
        let m = CyclicModule::trivial(3, &FinAbGroup::cyclic(9));
        assert_eq!(cohomology(&m, 1).unwrap(), FinAbGroup::cyclic(3));
        assert_eq!(cohomology(&m, 2).unwrap(), FinAbGroup::cyclic(3));
    }
}
