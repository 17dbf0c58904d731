//! Exact linear algebra over ℤ, ℚ and F_p.

mod echelon;
mod matrix;
mod snf;
mod submodule;

pub use echelon::{basis_row, hnf, inverse, kernel, kernel_modulo, solve_linear};
pub use matrix::{
    axpy, determinant, format_vec, is_zero_vec, unit_vec, vec_add, vec_from_i64, vec_scale, vec_sub, zero_vec, Matrix,
};
pub(crate) use matrix::vec_mat;
pub use snf::{invariant_factors, snf};
pub use submodule::{quotient_presentation, relations_among, ModulePresentation, QuotientModule, Submodule};
