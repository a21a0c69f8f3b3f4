//! Growth factors of Gaussian elimination under no, partial and complete
//! pivoting, the matrix families that attain extreme growth, and the
//! randomized sampling and search machinery used to study them.

pub mod elimination;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod models;
pub mod parallel;
pub mod randgen;
pub mod search;

pub use elimination::{factorize, growth, growth_factor, EliminationTrace, GrowthReport, PivotStrategy};
pub use error::{Error, Result};
pub use linalg::{Matrix, Permutation};
