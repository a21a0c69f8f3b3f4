use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The rotation `G(θ, i, j)`: the identity with the `[i j] x [i j]` block
/// replaced by `[[cos θ, sin θ], [-sin θ, cos θ]]`.
pub fn givens_rotation(theta: f64, i: usize, j: usize, n: usize) -> Result<Matrix> {
    check_plane(i, j, n)?;
    let (s, c) = theta.sin_cos();
    let mut g = Matrix::identity(n);
    g[(i, i)] = c;
    g[(i, j)] = s;
    g[(j, i)] = -s;
    g[(j, j)] = c;
    Ok(g)
}

pub(crate) fn check_plane(i: usize, j: usize, n: usize) -> Result<()> {
    if i >= j || j >= n {
        return Err(Error::Index(format!("rotation plane ({i}, {j}) invalid for n = {n}")));
    }
    Ok(())
}

/// In-place `A <- G(θ, i, j) A` (touches rows `i` and `j` only).
pub fn rotate_rows(a: &mut Matrix, c: f64, s: f64, i: usize, j: usize) {
    for col in 0..a.cols() {
        let x = a[(i, col)];
        let y = a[(j, col)];
        a[(i, col)] = c * x + s * y;
        a[(j, col)] = -s * x + c * y;
    }
}

/// In-place `A <- A G(θ, i, j)` (touches columns `i` and `j` only).
pub fn rotate_cols(a: &mut Matrix, c: f64, s: f64, i: usize, j: usize) {
    for row in 0..a.rows() {
        let x = a[(row, i)];
        let y = a[(row, j)];
        a[(row, i)] = c * x - s * y;
        a[(row, j)] = s * x + c * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_angle_is_identity() {
        assert_eq!(givens_rotation(0.0, 1, 3, 5).unwrap(), Matrix::identity(5));
    }

    #[test]
    fn quarter_turn() {
        let g = givens_rotation(FRAC_PI_2, 0, 1, 2).unwrap();
        let want = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(g.max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn distance_from_identity_matches_closed_form() {
        // ‖I − G(θ)‖_F = 2√(1 − cos θ); at θ = 0.3 that is 0.42267...
        let g = givens_rotation(0.3, 1, 4, 5).unwrap();
        let d = (&Matrix::identity(5) - &g).frobenius_norm();
        assert!((d - 2.0 * (1.0 - 0.3f64.cos()).sqrt()).abs() < 1e-15);
        assert!((d - 0.422_674_867_359_742_7).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_and_inverse_is_transpose() {
        for &t in &[0.1, 1.3, -2.7, 3.0] {
            let g = givens_rotation(t, 0, 2, 4).unwrap();
            assert!(g.orthogonality_defect() < 1e-14);
            let inv = givens_rotation(-t, 0, 2, 4).unwrap();
            assert!(inv.max_abs_diff(&g.transpose()) < 1e-15);
        }
    }

    #[test]
    fn invalid_planes() {
        assert!(matches!(givens_rotation(0.1, 1, 1, 3), Err(Error::Index(_))));
        assert!(matches!(givens_rotation(0.1, 2, 1, 3), Err(Error::Index(_))));
        assert!(matches!(givens_rotation(0.1, 0, 3, 3), Err(Error::Index(_))));
    }

    #[test]
    fn in_place_rotations_match_products() {
        let a = Matrix::from_fn(4, 4, |i, j| (i * 4 + j) as f64 - 7.5);
        let t = 0.77;
        let g = givens_rotation(t, 1, 3, 4).unwrap();
        let (s, c) = t.sin_cos();
        let mut left = a.clone();
        rotate_rows(&mut left, c, s, 1, 3);
        assert!(left.max_abs_diff(&(&g * &a)) < 1e-14);
        let mut right = a.clone();
        rotate_cols(&mut right, c, s, 1, 3);
        assert!(right.max_abs_diff(&(&a * &g)) < 1e-14);
    }
}
