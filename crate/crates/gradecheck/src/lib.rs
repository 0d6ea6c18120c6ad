//! File formats and the claim suite behind the `gradecheck` binary.

pub mod format;
pub mod suite;
