//! Legendre-family invariants, the tautological family over the coarse
//! space, and Weierstrass curves over exact rings.

pub mod checks;
mod curve;
mod field;
mod legendre;
mod ring;

pub use curve::{parse_curves, CurveRecord, WeierstrassCurve};
pub use field::{FiniteField, Fq};
pub use legendre::{
    j_of_s, j_of_t, legendre_discriminant, legendre_to_s_form_check, s3_orbit, s_of_t,
    solve_t_from_c, taut_family_at, ChangeOfVariables, TRoot,
};
pub use ring::{RingElt, Zpm};

use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error("{0} is not a unit")]
    NonUnit(&'static str),
    #[error("not a square")]
    NotASquare,
    #[error("point is not a nontrivial 2-torsion point")]
    NotTwoTorsion,
    #[error("characteristic 2 is not supported")]
    BadCharacteristic,
    #[error("no field of order {0} is available")]
    UnsupportedField(u64),
    #[error("only models with a1 = a3 = 0 are supported")]
    UnsupportedModel,
    #[error("curve is singular")]
    NotElliptic,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
