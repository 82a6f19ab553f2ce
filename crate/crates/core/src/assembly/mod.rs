//! Abelian-group expressions and the evaluators that assemble Brauer and
//! Picard groups from base data.

mod base;
mod expr;
mod formulas;
mod report;
mod spectral;

pub use base::{derive_zp_entries, BaseDescriptor, BaseKind, Entry, SUPPORTED_PRIMES};
pub use expr::{AbGroupExpr, Atom, ExprError};
pub use formulas::{
    compute_g_and_gprime, full_brauer, p_primary_brauer, p_primary_brauer_with, picard_group, two_primary_brauer,
    GeneratedGroup,
};
pub use report::{brauer_report, BrauerReport, Check};
pub use spectral::{
    apply_differentials, e2_page, exact_sequence_order_check, kummer_check, E2Entry, E2Page, EInfinity, OrderReport,
    DEFAULT_TRUNCATION,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error("missing table entry: {0}")]
    MissingTableEntry(String),
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("cannot parse base spec {0:?} (expected ZP:2,3 or Q or algclosed:<char>)")]
    BadBaseSpec(String),
    #[error("bad prime set: {0}")]
    BadP(String),
    #[error("prime {0} is not supported here")]
    UnsupportedP(u64),
    #[error("term {0} is infinite after truncation")]
    InfiniteTerm(String),
    #[error("no verified witness: {0}")]
    MissingWitness(String),
    #[error("truncation level 2^{0} is below 2^2")]
    BadLevel(u32),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
