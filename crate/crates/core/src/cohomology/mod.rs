//! Cohomology of finite cyclic groups via the periodic resolution, the
//! built-in `C₂` and `S₃` lattices, and a brute-force cochain oracle.

mod brute;
mod fixture;
mod module;
mod reps;
mod units;

pub use brute::{brute_force_cohomology, MAX_CANDIDATES, MAX_ORDER};
pub use fixture::{format_module, parse_module};
pub use module::{cohomology, presentation, tensor_with, CyclicModule, MAX_DEGREE};
pub use reps::{builtin_rep, rho_tilde_basis, BuiltinRep, RepGroup, RepName};
pub use units::{units_sequence_check, UnitsReport, UnitsRow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("degree {0} is above the supported range")]
    DegreeTooLarge(u32),
    #[error("too large for enumeration: {0}")]
    TooLarge(String),
    #[error("units model mismatch: {0}")]
    ModelMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
