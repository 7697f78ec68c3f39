//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms, integer kernels, saturation and Pfaffians.

mod lattice;
mod matrix;
mod pfaffian;
mod snf;

pub use lattice::{
    echelon_rows, hnf_basis, in_rational_span, int_rank, is_saturated, kernel_basis,
    lattice_coordinates, rank_over_field, saturate,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix, Scalar};
pub use pfaffian::pfaffian;
pub use snf::{invariant_factors, snf, SmithForm};

