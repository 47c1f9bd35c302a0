//! Exact integer linear algebra: Smith normal form, kernels, images and
//! homology of composable pairs.

mod group;
mod matrix;
mod snf;
mod subquotient;

pub use group::serialize_ints;
pub use group::{coefficients_via_uct, FgAbGroup};
pub use matrix::{int_vec, IntMatrix};
pub use snf::{
    determinant, invariant_factors, is_unimodular, kernel_basis, rank, snf, solve_columns, solve_in_image,
    SnfDecomposition,
};
pub use subquotient::{check_exact, homology_at, ExactnessCheck, GroupHom, Subquotient};
