//! Seeded random matrices and the small perturbation steps used by the
//! neighborhood studies and the search.
//!
//! Every draw comes from an [`RngStream`] keyed by `(seed, stream)`. Parallel
//! loops derive one substream per sample index, so results do not depend on
//! scheduling.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{check_plane, householder_qr, rotate_cols, rotate_rows, Matrix};

/// One step of the SplitMix64 generator, used as a 64-bit mixing function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A reproducible random stream: ChaCha8 seeded by `seed`, on stream `stream`.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng, spare_normal: None }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Independent stream for sub-task `index`, a pure function of
    /// `(seed, stream, index)`.
    pub fn derive(&self, index: u64) -> RngStream {
        RngStream::new(splitmix64(self.seed ^ splitmix64(self.stream)), index)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by the Box–Muller transform; the second variate of
    /// each pair is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64(); // (0, 1], keeps ln finite
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    pub fn normals(&mut self, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.normal()).collect()
    }
}

/// `n x m` matrix of iid standard normals.
pub fn ginibre(n: usize, m: usize, rng: &mut RngStream) -> Matrix {
    Matrix::new(n, m, rng.normals(n * m)).expect("normals are finite")
}

/// Haar-distributed orthogonal matrix: the positive-diagonal QR factor of a
/// Ginibre draw.
pub fn haar_orthogonal(n: usize, rng: &mut RngStream) -> Result<Matrix> {
    let mut last = None;
    for _ in 0..2 {
        match householder_qr(&ginibre(n, n, rng)) {
            Ok((q, _)) => return Ok(q),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("two attempts"))
}

pub fn uniform_sphere(n: usize, rng: &mut RngStream) -> Vec<f64> {
    loop {
        let mut x = rng.normals(n);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
            return x;
        }
    }
}

/// Uniform point in the closed `eps`-ball of `R^n`: the first `n`
/// coordinates of a uniform point on the sphere in `R^{n+2}`, scaled by `eps`.
pub fn uniform_ball(n: usize, eps: f64, rng: &mut RngStream) -> Vec<f64> {
    let x = uniform_sphere(n + 2, rng);
    x[..n].iter().map(|v| eps * v).collect()
}

/// Givens angles indexed by pairs `i < j` in row-major pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    n: usize,
    thetas: Vec<f64>,
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl AngleVector {
    pub fn new(n: usize, thetas: Vec<f64>) -> Result<Self> {
        if thetas.len() != pair_count(n) {
            return Err(Error::Dimension(format!(
                "order {n} needs {} angles, got {}",
                pair_count(n),
                thetas.len()
            )));
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("angles must be finite".into()));
        }
        Ok(Self { n, thetas })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, thetas: vec![0.0; pair_count(n)] }
    }

    /// Uniform in the `r`-ball of `R^{n(n-1)/2}`.
    pub fn uniform_ball(n: usize, r: f64, rng: &mut RngStream) -> Self {
        Self { n, thetas: uniform_ball(pair_count(n), r, rng) }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.thetas
    }

    pub fn norm(&self) -> f64 {
        self.thetas.iter().map(|t| t * t).sum::<f64>().sqrt()
    }

    /// Position of pair `(i, j)`, `i < j`.
    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        check_plane(i, j, self.n)?;
        Ok(i * (2 * self.n - i - 1) / 2 + (j - i - 1))
    }

    pub fn set(&mut self, i: usize, j: usize, theta: f64) -> Result<()> {
        let k = self.index(i, j)?;
        self.thetas[k] = theta;
        Ok(())
    }

    fn pairs(&self) -> Vec<((usize, usize), f64)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.thetas.iter().copied())
            .collect()
    }
}

/// `Q(θ) = G(θ_{0,1}) G(θ_{0,2}) ··· G(θ_{n-2,n-1})`, multiplied left to right.
pub fn givens_product(theta: &AngleVector) -> Matrix {
    let mut q = Matrix::identity(theta.order().max(1));
    for ((i, j), t) in theta.pairs() {
        if t != 0.0 {
            let (s, c) = t.sin_cos();
            rotate_cols(&mut q, c, s, i, j);
        }
    }
    q
}

/// `Q(θ) A` without forming `Q(θ)`.
pub fn apply_givens_product(theta: &AngleVector, a: &Matrix) -> Result<Matrix> {
    if a.rows() != theta.order() {
        return Err(Error::Dimension(format!(
            "angles for order {} applied to {} rows",
            theta.order(),
            a.rows()
        )));
    }
    let mut out = a.clone();
    for ((i, j), t) in theta.pairs().into_iter().rev() {
        if t != 0.0 {
            let (s, c) = t.sin_cos();
            rotate_rows(&mut out, c, s, i, j);
        }
    }
    Ok(out)
}

/// `Q(θ) A` with `θ` uniform in the `r`-ball.
pub fn orthogonal_step_raw(a: &Matrix, r: f64, rng: &mut RngStream) -> Result<Matrix> {
    let n = a.order()?;
    if n == 1 {
        return Ok(a.clone());
    }
    let theta = AngleVector::uniform_ball(n, r, rng);
    apply_givens_product(&theta, a)
}

/// Multiplicative step with `‖A - Q(θ)A‖_F ≤ eps`: the ball radius is
/// `eps / (√(n(n-1)) ‖A‖_F)`.
pub fn orthogonal_step(a: &Matrix, eps: f64, rng: &mut RngStream) -> Result<Matrix> {
    let n = a.order()?;
    if n == 1 {
        return Ok(a.clone());
    }
    let r = eps / (((n * (n - 1)) as f64).sqrt() * a.frobenius_norm());
    orthogonal_step_raw(a, r, rng)
}

/// Additive step `A + (eps/√n) G` with `G` Ginibre.
pub fn gaussian_step(a: &Matrix, eps: f64, rng: &mut RngStream) -> Result<Matrix> {
    let n = a.order()?;
    let g = ginibre(n, n, rng);
    if eps == 0.0 {
        return Ok(a.clone());
    }
    Ok(a + &g.scale(eps / (n as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::givens_rotation;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |seed, stream| {
            let mut r = RngStream::new(seed, stream);
            (0..4).map(|_| r.next_u64()).collect::<Vec<_>>()
        };
        let a = draw(42, 0);
        let b = draw(42, 0);
        assert_eq!(a, b);
        let mut other = RngStream::new(42, 1);
        assert_ne!(a[0], other.next_u64());
        let mut d1 = RngStream::new(42, 0).derive(7);
        let mut d2 = RngStream::new(42, 0).derive(7);
        assert_eq!(d1.next_u64(), d2.next_u64());
    }

    #[test]
    fn ginibre_is_deterministic() {
        let a = ginibre(3, 4, &mut RngStream::new(42, 0));
        let b = ginibre(3, 4, &mut RngStream::new(42, 0));
        assert_eq!(a, b);
        assert_eq!((a.rows(), a.cols()), (3, 4));
    }

    #[test]
    fn sphere_and_ball_shapes() {
        let mut rng = RngStream::new(1, 2);
        for n in 1..6 {
            let x = uniform_sphere(n, &mut rng);
            assert!((x.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs() < 1e-15);
            let b = uniform_ball(n, 0.3, &mut rng);
            assert!(b.iter().map(|v| v * v).sum::<f64>().sqrt() <= 0.3);
        }
        let x = uniform_sphere(1, &mut rng);
        assert_eq!(x[0].abs(), 1.0);
    }

    #[test]
    fn angle_indexing_is_row_major() {
        let mut t = AngleVector::zeros(4);
        let mut seen = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                seen.push(t.index(i, j).unwrap());
            }
        }
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
        assert!(t.index(2, 2).is_err());
        t.set(1, 3, 0.4).unwrap();
        assert_eq!(t.as_slice()[4], 0.4);
        assert!(AngleVector::new(4, vec![0.0; 5]).is_err());
    }

    #[test]
    fn product_special_cases() {
        assert_eq!(givens_product(&AngleVector::zeros(5)), Matrix::identity(5));
        let mut t = AngleVector::zeros(5);
        t.set(1, 3, 0.9).unwrap();
        let g = givens_rotation(0.9, 1, 3, 5).unwrap();
        assert!(givens_product(&t).max_abs_diff(&g) < 1e-16);
    }

    #[test]
    fn product_order_and_application() {
        let t = AngleVector::new(3, vec![0.1, -0.4, 0.7]).unwrap();
        let want = &(&givens_rotation(0.1, 0, 1, 3).unwrap() * &givens_rotation(-0.4, 0, 2, 3).unwrap())
            * &givens_rotation(0.7, 1, 2, 3).unwrap();
        let q = givens_product(&t);
        assert!(q.max_abs_diff(&want) < 1e-15);
        let a = Matrix::from_fn(3, 3, |i, j| (i as f64) - 2.0 * j as f64);
        assert!(apply_givens_product(&t, &a).unwrap().max_abs_diff(&(&q * &a)) < 1e-14);
    }

    #[test]
    fn steps_small_cases() {
        let mut rng = RngStream::new(9, 0);
        let a = Matrix::identity(4);
        assert_eq!(gaussian_step(&a, 0.0, &mut rng).unwrap(), a);
        let one = Matrix::identity(1);
        assert_eq!(orthogonal_step(&one, 0.1, &mut rng).unwrap(), one);
        let tiny = orthogonal_step(&a, 1e-14, &mut rng).unwrap();
        assert!(tiny.max_abs_diff(&a) < 1e-15);
        let q = haar_orthogonal(4, &mut rng).unwrap();
        let stepped = orthogonal_step(&q, 1e-2, &mut rng).unwrap();
        assert!(stepped.orthogonality_defect() < 1e-12 * 4.0);
    }
}
