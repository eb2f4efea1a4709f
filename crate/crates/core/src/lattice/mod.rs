//! Exact integer and rational linear algebra: matrices, Smith normal form,
//! rational solving and finite lattice quotients.

mod matrix;
mod quotient;
mod smith;

pub use matrix::{IntegerMatrix, RationalVector};
pub use quotient::{lattice_quotient, solve_rational, FiniteAbelianGroup};
pub use smith::{smith_normal_form, SmithDecomposition};
