//! Arithmetic in `Z_p[ζ_p]` at tracked π-adic precision, the cyclotomic
//! Hilbert symbol `(ζ_p, ·)` through the logarithm and trace, and quadratic
//! Hilbert symbols over the completions of `Q`.

mod literal;
mod quadratic;
mod residue;
mod ring;
mod symbol;

pub use literal::{parse_element, to_literal};
pub use quadratic::{
    prime_factors, product_formula_holds, quad_hilbert, quaternion_trivial_over_q,
    relevant_places, Place,
};
pub use residue::{inv_mod_prime, is_prime, sqrt_mod_prime, Modulus};
pub use ring::{default_precision, CycloElement, CycloRing, Valuation};
pub use symbol::{exact_valuation, log_one_unit, symbol_zeta, teichmuller, trace, SymbolExponent, TraceValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("p^m for p = {p} at precision {prec} does not fit the coefficient type")]
    PrecisionTooLarge { p: u64, prec: u32 },
    #[error("element is not a unit")]
    NonUnit,
    #[error("not enough precision left")]
    PrecisionExhausted,
    #[error("residue is not a nonzero square")]
    NotASquareResidue,
    #[error("valuation is not of the form p^(2j) times a unit")]
    UnsupportedValuation,
    #[error("element is not congruent to 1 mod pi")]
    NotOneUnit,
    #[error("Hilbert symbol with a zero argument")]
    ZeroArgument,
    #[error("trace of the logarithm is not divisible by p")]
    TraceNotDivisible,
    #[error("literal parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}
