use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Householder QR of a square nonsingular matrix, normalized so that `R`
/// has a strictly positive diagonal (the normalization under which the
/// factorization is unique).
pub fn householder_qr(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = a.order()?;
    let mut r = a.clone();
    let mut q = Matrix::identity(n);
    let tol = n as f64 * f64::EPSILON * a.max_norm();
    let mut v = vec![0.0; n];

    for k in 0..n.saturating_sub(1) {
        let norm = (k..n).map(|i| r[(i, k)] * r[(i, k)]).sum::<f64>().sqrt();
        if norm <= tol {
            return Err(Error::Singular { step: k });
        }
        let x0 = r[(k, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in k..n {
            v[i] = r[(i, k)];
        }
        v[k] -= alpha;
        let vtv: f64 = (k..n).map(|i| v[i] * v[i]).sum();
        if vtv == 0.0 {
            continue;
        }
        // R <- H R
        for j in k..n {
            let dot: f64 = (k..n).map(|i| v[i] * r[(i, j)]).sum();
            let f = 2.0 * dot / vtv;
            for i in k..n {
                r[(i, j)] -= f * v[i];
            }
        }
        for i in k + 1..n {
            r[(i, k)] = 0.0;
        }
        // Q <- Q H
        for i in 0..n {
            let dot: f64 = (k..n).map(|l| q[(i, l)] * v[l]).sum();
            let f = 2.0 * dot / vtv;
            for l in k..n {
                q[(i, l)] -= f * v[l];
            }
        }
    }

    for k in 0..n {
        let d = r[(k, k)];
        if d.abs() <= tol {
            return Err(Error::Singular { step: k });
        }
        if d < 0.0 {
            for j in 0..n {
                r[(k, j)] = -r[(k, j)];
            }
            for i in 0..n {
                q[(i, k)] = -q[(i, k)];
            }
        }
    }
    Ok((q, r))
}

/// Orthogonal factor of the positive-diagonal QR factorization.
pub fn orthogonal_factor(a: &Matrix) -> Result<Matrix> {
    householder_qr(a).map(|(q, _)| q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_factors_trivially() {
        let (q, r) = householder_qr(&Matrix::identity(4)).unwrap();
        assert!(q.max_abs_diff(&Matrix::identity(4)) < 1e-15);
        assert!(r.max_abs_diff(&Matrix::identity(4)) < 1e-15);
    }

    #[test]
    fn negative_diagonal_is_corrected() {
        let a = Matrix::from_diag(&[-2.0, 3.0, -0.5]);
        let (q, r) = householder_qr(&a).unwrap();
        assert_eq!(r.diagonal(), vec![2.0, 3.0, 0.5]);
        assert!((&q * &r).max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn singular_input_is_rejected() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(householder_qr(&a), Err(Error::Singular { .. })));
        let z = Matrix::from_rows(&[[0.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(householder_qr(&z), Err(Error::Singular { step: 0 })));
    }

    fn square(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-1.0f64..1.0, n * n)
            .prop_map(move |d| Matrix::new(n, n, d).unwrap())
    }

    proptest! {
        #[test]
        fn reconstruction_and_orthogonality(a in (1usize..9).prop_flat_map(square)) {
            let n = a.rows();
            // random draws are nonsingular almost surely; skip the rare near-singular one
            if let Ok((q, r)) = householder_qr(&a) {
                prop_assert!((&q * &r).max_abs_diff(&a) <= 1e-12 * n as f64 * a.max_norm());
                prop_assert!(q.orthogonality_defect() <= 1e-12 * n as f64);
                for k in 0..n {
                    prop_assert!(r[(k, k)] > 0.0);
                    for i in k + 1..n {
                        prop_assert_eq!(r[(i, k)], 0.0);
                    }
                }
            }
        }
    }
}
