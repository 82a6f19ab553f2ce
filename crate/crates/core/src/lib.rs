pub mod intlinalg;
pub mod cohomology;
pub mod padic;
pub mod moduli;
pub mod witness;
pub mod assembly;
pub mod cli;
