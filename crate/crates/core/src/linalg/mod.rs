//! Exact integer linear algebra: dense matrices, Smith normal form and
//! lattice subquotients.

mod lattice;
mod matrix;
mod snf;

pub use lattice::{NotASublattice, Subquotient};
pub use matrix::Matrix;
pub use snf::{
    kernel_basis, kernel_mod, lattice_basis, smith_normal_form, smith_with, solve, solve_with,
    SmithForm, Transforms,
};
