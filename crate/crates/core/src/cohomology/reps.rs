use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::intlinalg::{IntMatrix, LatticeCoords};

use super::module::CyclicModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepName {
    Triv,
    Sgn,
    Rho,
    RhoTilde,
    RhoRestricted,
    RhoTildeRestricted,
}

impl RepName {
    pub const ALL: [RepName; 6] = [
        RepName::Triv,
        RepName::Sgn,
        RepName::Rho,
        RepName::RhoTilde,
        RepName::RhoRestricted,
        RepName::RhoTildeRestricted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RepName::Triv => "triv",
            RepName::Sgn => "sgn",
            RepName::Rho => "rho",
            RepName::RhoTilde => "rho_tilde",
            RepName::RhoRestricted => "rho_restricted",
            RepName::RhoTildeRestricted => "rho_tilde_restricted",
        }
    }
}

impl fmt::Display for RepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RepName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown representation {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepGroup {
    C2,
    S3,
}

/// A built-in representation. For the `S₃` representations `module` is the
/// restriction to `C₂ = ⟨(23)⟩` and `s3_generators` holds the images of
/// `τ = (23)` and `σ = (123)`.
#[derive(Clone, Debug)]
pub struct BuiltinRep {
    pub name: RepName,
    pub group: RepGroup,
    pub module: CyclicModule,
    pub s3_generators: Option<(IntMatrix, IntMatrix)>,
    /// For the kernel lattice of `(a,b,c) ↦ a+b+c`: its basis inside `Z³`.
    pub lattice_basis: Option<IntMatrix>,
}

fn permutation(images: [usize; 3]) -> IntMatrix {
    let mut m = IntMatrix::zeros(3, 3);
    for (src, &dst) in images.iter().enumerate() {
        m[(dst, src)] = BigInt::from(1);
    }
    m
}

fn tau3() -> IntMatrix {
    permutation([0, 2, 1])
}

fn sigma3() -> IntMatrix {
    permutation([1, 2, 0])
}

/// Basis `{(0,1,−1), (1,0,−1)}` of the sum-zero lattice.
pub fn rho_tilde_basis() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[1, 0], &[-1, -1]])
}

/// Matrix of `g` restricted to the lattice spanned by `basis`.
fn induced(g: &IntMatrix, basis: &IntMatrix) -> IntMatrix {
    let lc = LatticeCoords::new(basis);
    let image = g.mul(basis);
    let cols: Vec<Vec<BigInt>> = (0..image.cols())
        .map(|j| lc.generator_coords(&image.column(j)).expect("lattice is not stable"))
        .collect();
    IntMatrix::from_columns(&cols, basis.cols())
}

pub fn builtin_rep(name: RepName) -> BuiltinRep {
    let c2 = |action: IntMatrix| CyclicModule::free(2, action).expect("built-in module is valid");
    match name {
        RepName::Triv => BuiltinRep {
            name,
            group: RepGroup::C2,
            module: c2(IntMatrix::identity(1)),
            s3_generators: None,
            lattice_basis: None,
        },
        RepName::Sgn => BuiltinRep {
            name,
            group: RepGroup::C2,
            module: c2(IntMatrix::from_i64(&[&[-1]])),
            s3_generators: None,
            lattice_basis: None,
        },
        RepName::Rho | RepName::RhoRestricted => BuiltinRep {
            name,
            group: if name == RepName::Rho { RepGroup::S3 } else { RepGroup::C2 },
            module: c2(tau3()),
            s3_generators: (name == RepName::Rho).then(|| (tau3(), sigma3())),
            lattice_basis: None,
        },
        RepName::RhoTilde | RepName::RhoTildeRestricted => {
            let basis = rho_tilde_basis();
            let tau = induced(&tau3(), &basis);
            let s3 = (name == RepName::RhoTilde).then(|| (tau.clone(), induced(&sigma3(), &basis)));
            BuiltinRep {
                name,
                group: if s3.is_some() { RepGroup::S3 } else { RepGroup::C2 },
                module: c2(tau),
                s3_generators: s3,
                lattice_basis: Some(basis),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use crate::intlinalg::FinAbGroup;

    #[test]
    fn sign_and_permutation() {
        assert_eq!(builtin_rep(RepName::Sgn).module.action, IntMatrix::from_i64(&[&[-1]]));
        assert_eq!(
            builtin_rep(RepName::RhoRestricted).module.action,
            IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
        );
    }

    #[test]
    fn rho_tilde_swap() {
        let r = builtin_rep(RepName::RhoTildeRestricted);
        // τ(0,1,−1) = −(0,1,−1) and τ(1,0,−1) = (1,0,−1) − (0,1,−1)
        assert_eq!(r.module.action, IntMatrix::from_i64(&[&[-1, -1], &[0, 1]]));
        let basis = r.lattice_basis.unwrap();
        assert!(IntMatrix::from_i64(&[&[1, 1, 1]]).mul(&basis).is_zero());
        // (−2,1,1) = (0,1,−1) − 2·(1,0,−1) is fixed
        let v = vec![BigInt::from(1), BigInt::from(-2)];
        assert_eq!(basis.mul_vec(&v), vec![BigInt::from(-2), BigInt::from(1), BigInt::from(1)]);
        assert_eq!(r.module.action.mul_vec(&v), v);
        assert_eq!(cohomology(&r.module, 0).unwrap(), FinAbGroup::free(1));
    }

    #[test]
    fn s3_relations_hold() {
        for name in [RepName::Rho, RepName::RhoTilde] {
            let (t, s) = builtin_rep(name).s3_generators.unwrap();
            let id = IntMatrix::identity(t.rows());
            assert_eq!(t.pow(2), id);
            assert_eq!(s.pow(3), id);
            assert_eq!(t.mul(&s).pow(2), id);
        }
    }

    #[test]
    fn names_round_trip() {
        for r in RepName::ALL {
            assert_eq!(r.as_str().parse::<RepName>().unwrap(), r);
        }
        assert!("rho2".parse::<RepName>().is_err());
    }
}
