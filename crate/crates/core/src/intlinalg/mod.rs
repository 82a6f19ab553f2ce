//! Exact integer linear algebra: Smith normal form and the kernel, cokernel
//! and subquotient computations built on it.

mod group;
mod matrix;
mod snf;
mod text;

pub use group::{
    cokernel, kernel_basis, lattice_quotient, prime_power_split, subquotient, FinAbGroup,
    LatticeCoords, SubquotientError,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};
pub use text::{parse_matrix, parse_matrix_at, ParseError};
