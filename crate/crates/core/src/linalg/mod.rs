//! Dense matrices, norms, QR, Givens rotations and permutations.

mod givens;
mod io;
mod matrix;
mod norms;
mod permutation;
mod qr;

pub(crate) use givens::check_plane;
pub use givens::{givens_rotation, rotate_cols, rotate_rows};
pub use io::{format_f64, read_csv, to_csv_string, write_csv};
pub use matrix::Matrix;
pub use norms::{
    infinity_condition, inverse, smallest_singular_value, spectral_norm, SigmaMin,
    POWER_ITERATION_CAP, POWER_ITERATION_TOL,
};
pub use permutation::Permutation;
pub use qr::{householder_qr, orthogonal_factor};
