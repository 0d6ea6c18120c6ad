//! Exact structure-constant algebras over Q(i), their group gradings, and
//! the Kantor construction of Lie algebras from structurable algebras.

// Structure-constant code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod composition;
pub mod constructions;
pub mod error;
pub mod field;
pub mod grading;
pub mod kantor;
pub mod smirnov;

pub use error::{Error, Result};
