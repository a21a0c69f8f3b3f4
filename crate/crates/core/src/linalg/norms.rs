use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::elimination::{factorize, PivotStrategy, ZERO_PIVOT_THRESHOLD};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const POWER_ITERATION_CAP: usize = 10_000;
pub const POWER_ITERATION_TOL: f64 = 1e-12;

// Fixed start so that norms are reproducible and invariant-preserving:
// `A` and `Q A` see exactly the same iteration.
fn start_vector(n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_ed0f_5bec);
    let mut v: Vec<f64> = (0..n)
        .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 + 0.5)
        .collect();
    normalize(&mut v);
    v
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Power iteration for the dominant eigenvalue of a symmetric positive
/// semidefinite operator given as `apply`.
fn dominant_eigenvalue(n: usize, mut apply: impl FnMut(&[f64]) -> Vec<f64>) -> Result<f64> {
    let mut x = start_vector(n);
    let mut lambda = 0.0_f64;
    for _ in 0..POWER_ITERATION_CAP {
        let mut y = apply(&x);
        let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let norm = normalize(&mut y);
        if norm == 0.0 {
            return Ok(0.0);
        }
        if (rayleigh - lambda).abs() <= POWER_ITERATION_TOL * rayleigh.abs() {
            return Ok(rayleigh);
        }
        lambda = rayleigh;
        x = y;
    }
    Err(Error::NoConvergence { iterations: POWER_ITERATION_CAP })
}

/// Largest singular value `‖A‖₂`, by power iteration on `AᵀA`.
pub fn spectral_norm(a: &Matrix) -> Result<f64> {
    if a.max_norm() == 0.0 {
        return Ok(0.0);
    }
    // scale to unit max-norm to keep AᵀA far from overflow
    let s = a.max_norm();
    let b = a.scale(1.0 / s);
    let lambda = dominant_eigenvalue(b.cols(), |x| b.tr_mul_vec(&b.mul_vec(x)))?;
    Ok(lambda.max(0.0).sqrt() * s)
}

/// Result of [`smallest_singular_value`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaMin {
    pub value: f64,
    /// Set when `A` is singular to working precision; `value` is then 0.
    pub singular: bool,
}

/// `σ_min(A)` by inverse iteration on `AᵀA`, using GEPP solves.
pub fn smallest_singular_value(a: &Matrix) -> Result<SigmaMin> {
    let n = a.order()?;
    let singular = SigmaMin { value: 0.0, singular: true };
    let trace = match factorize(a, PivotStrategy::Partial) {
        Ok(t) => t,
        Err(Error::Singular { .. }) => return Ok(singular),
        Err(e) => return Err(e),
    };
    if trace.min_abs_pivot() < ZERO_PIVOT_THRESHOLD {
        return Ok(singular);
    }
    let mu = dominant_eigenvalue(n, |x| trace.solve(&trace.solve_transpose(x)))?;
    if !mu.is_finite() || mu <= 0.0 {
        return Ok(singular);
    }
    Ok(SigmaMin { value: 1.0 / mu.sqrt(), singular: false })
}

/// `A⁻¹` via GEPP, column by column.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.order()?;
    let trace = factorize(a, PivotStrategy::Partial)?;
    let mut inv = Matrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let x = trace.solve(&e);
        e[j] = 0.0;
        for i in 0..n {
            inv[(i, j)] = x[i];
        }
    }
    if !inv.is_finite() {
        return Err(Error::Singular { step: n - 1 });
    }
    Ok(inv)
}

/// `κ_∞(A) = ‖A‖_∞ ‖A⁻¹‖_∞`.
pub fn infinity_condition(a: &Matrix) -> Result<f64> {
    Ok(a.inf_norm() * inverse(a)?.inf_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orthogonal_factor;

    #[test]
    fn spectral_norm_simple_cases() {
        assert!((spectral_norm(&Matrix::identity(5)).unwrap() - 1.0).abs() < 1e-14);
        let d = Matrix::from_diag(&[3.0, -7.0, 2.0]);
        assert!((spectral_norm(&d).unwrap() - 7.0).abs() < 1e-10);
        assert_eq!(spectral_norm(&Matrix::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn spectral_norm_rank_one() {
        // u vᵀ has ‖·‖₂ = ‖u‖ ‖v‖
        let u = [1.0, 2.0, 2.0];
        let v = [3.0, 4.0];
        let a = Matrix::from_fn(3, 2, |i, j| u[i] * v[j]);
        assert!((spectral_norm(&a).unwrap() - 15.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_orthogonal_invariance() {
        let a = Matrix::from_fn(5, 5, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0);
        let q = orthogonal_factor(&Matrix::from_fn(5, 5, |i, j| {
            if i == j { 4.0 } else { ((i + 2 * j) % 5) as f64 - 2.0 }
        }))
        .unwrap();
        let qa = &q * &a;
        let s1 = spectral_norm(&a).unwrap();
        let s2 = spectral_norm(&qa).unwrap();
        assert!((s1 - s2).abs() <= 1e-10 * s1);
    }

    #[test]
    fn sigma_min_simple_cases() {
        let s = smallest_singular_value(&Matrix::identity(6)).unwrap();
        assert!(!s.singular && (s.value - 1.0).abs() < 1e-14);
        let s = smallest_singular_value(&Matrix::from_diag(&[2.0, 0.5])).unwrap();
        assert!((s.value - 0.5).abs() < 1e-12);
        let sing = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(smallest_singular_value(&sing).unwrap(), SigmaMin { value: 0.0, singular: true });
    }

    #[test]
    fn condition_simple_cases() {
        assert!((infinity_condition(&Matrix::identity(3)).unwrap() - 1.0).abs() < 1e-15);
        assert!((infinity_condition(&Matrix::from_diag(&[10.0, 1.0])).unwrap() - 10.0).abs() < 1e-14);
        let sing = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(infinity_condition(&sing).is_err());
    }
}
