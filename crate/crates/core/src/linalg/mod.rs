//! Exact linear algebra over `ℚ` and `ℤ`, including systems whose unknown is a
//! matrix.

pub mod integer;
pub mod matrix;
pub mod rational;
pub mod system;
pub mod text;

pub use integer::{
    integer_nullspace, lattice_basis, lattice_contains, smith_normal_form, solve_integer,
    SnfDecomposition,
};
pub use matrix::{int_matrix, rat, rat_matrix, ratio, IntMatrix, Matrix, RatMatrix};
pub use rational::{
    column_space_contains, columnspace_basis, intersection_dim, inverse, left_annihilator,
    nullspace_basis, rank, row_space_canonical, rref, solve, solve_matrix, Inconsistent, Rref,
};
pub use system::{BlockSolution, MatrixSystem, Term};
