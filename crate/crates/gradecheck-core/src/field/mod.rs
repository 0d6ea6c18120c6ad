//! Exact arithmetic in Q(i) and the linear algebra built on it.

pub mod linalg;
pub mod matrix;
pub mod modular;
pub mod scalar;
pub mod smith;
pub mod sparse;

pub use linalg::{kernel_basis, matrix_rank, Echelon, Exact, Fp, RankMethod};
pub use matrix::Matrix;
pub use scalar::{Rational, Scalar};
pub use smith::{smith_invariants, IntMatrix};
pub use sparse::SVec;
