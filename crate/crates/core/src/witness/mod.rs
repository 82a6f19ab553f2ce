//! Witnesses `t ∈ Z_p[ζ_p]` with unit Legendre discriminant and prescribed
//! symbol `(ζ_p, t/(t−1)²)`, with serializable certificates.

mod certificate;
mod finder;

pub use certificate::{verify_certificate, verify_json, Certificate, FieldCheck, Parameters, VerificationReport};
pub use finder::{default_m, find_t, find_t_nonzero, find_t_zero, WitnessConfig, WitnessKind, DEFAULT_MAX_PRIME};

use crate::moduli::ModuliError;
use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("p = {p} exceeds the configured bound {bound}")]
    PrimeOutOfRange { p: u64, bound: u64 },
    #[error("m = {m} does not make 4m + 1 a nonzero square mod {p}")]
    BadOverride { p: u64, m: i64 },
    #[error("neither root of the quadratic is a unit with unit t - 1")]
    NoUnitRoot,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}
