//! Exact integer linear algebra.

mod lattice;
mod matrix;
mod snf;

pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use snf::{cokernel_invariants, kernel_basis, smith_normal_form, solve, solve_with, SmithForm};
