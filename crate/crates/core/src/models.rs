//! Named matrix families with extreme growth, the closed-form orthogonal
//! factor of Wilkinson's lower factor, and worst-case growth over matrices
//! sharing a fixed GENP lower factor.

use std::ops::{Add, Mul, Neg, Sub};

use crate::elimination::{growth_factor, GrowthReport, PivotStrategy};
use crate::error::{Error, Result};
use crate::linalg::{orthogonal_factor, spectral_norm, Matrix};

/// Largest order for which the closed-form factor is assembled in exact
/// integer arithmetic (`4^{n-1} < 2^53`).
pub const EXACT_ORDER_LIMIT: usize = 27;

/// Orders above this would overflow double precision in `2^n`-scale entries.
pub const OVERFLOW_ORDER_LIMIT: usize = 500;

/// Largest order accepted by [`gamma_by_paths`].
pub const PATH_ENUMERATION_LIMIT: usize = 16;

fn require_order(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

fn overflow_guard(n: usize) -> Result<()> {
    if n > OVERFLOW_ORDER_LIMIT {
        return Err(Error::Overflow(format!("order {n} exceeds {OVERFLOW_ORDER_LIMIT}")));
    }
    Ok(())
}

/// Wilkinson's matrix: unit diagonal, `-1` strictly below, last column all ones.
pub fn wilkinson_a(n: usize) -> Result<Matrix> {
    require_order(n, 1, "wilkinson_a")?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 || i == j {
            1.0
        } else if i > j {
            -1.0
        } else {
            0.0
        }
    }))
}

/// Unipotent lower triangular with `-1` strictly below the diagonal.
pub fn wilkinson_l(n: usize) -> Result<Matrix> {
    require_order(n, 1, "wilkinson_l")?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else if i > j {
            -1.0
        } else {
            0.0
        }
    }))
}

/// Upper factor of [`wilkinson_a`]: identity with last column `(1, 2, 4, .., 2^{n-1})`.
pub fn wilkinson_u(n: usize) -> Result<Matrix> {
    require_order(n, 1, "wilkinson_u")?;
    overflow_guard(n)?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            (i as f64).exp2()
        } else if i == j {
            1.0
        } else {
            0.0
        }
    }))
}

/// [`wilkinson_a`] with its last column doubled.
pub fn scaled_wilkinson(n: usize) -> Result<Matrix> {
    require_order(n, 2, "scaled_wilkinson")?;
    let mut a = wilkinson_a(n)?;
    for i in 0..n {
        a[(i, n - 1)] = 2.0;
    }
    Ok(a)
}

pub fn b3() -> Matrix {
    Matrix::from_rows(&[[0.5, 0.0, 0.5], [0.5, 1.0, 1.0], [0.5, -1.0, 1.0]]).expect("literal")
}

pub fn cryer_c() -> Matrix {
    Matrix::from_rows(&[[1.0, 1.0, 0.5], [-1.0, 0.5, 1.0], [0.5, -1.0, 1.0]]).expect("literal")
}

pub fn q3() -> Matrix {
    let m = Matrix::from_rows(&[[1.0, 0.0, 2.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]]).expect("literal");
    m.scale_columns(&[3f64, 2.0, 6.0].map(|d| 1.0 / d.sqrt()))
}

pub fn q4() -> Matrix {
    let m = Matrix::from_rows(&[
        [1.0, -1.0, 0.0, 4.0],
        [-1.0, 5.0, 0.0, 2.0],
        [-1.0, -3.0, 1.0, 1.0],
        [-1.0, -3.0, -1.0, 1.0],
    ])
    .expect("literal");
    m.scale_columns(&[4f64, 44.0, 2.0, 22.0].map(|d| 1.0 / d.sqrt()))
}

/// Sylvester Hadamard matrix of order `n` scaled by `1/√n`.
pub fn hadamard_scaled(n: usize) -> Result<Matrix> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("Sylvester order must be a power of two, got {n}")));
    }
    let s = 1.0 / (n as f64).sqrt();
    // H[i][j] = (-1)^{popcount(i & j)}
    Ok(Matrix::from_fn(n, n, |i, j| if (i & j).count_ones() % 2 == 0 { s } else { -s }))
}

/// The 2x2 unipotent `[[1, 0], [a, 1]]`.
pub fn l_alpha(a: f64) -> Matrix {
    Matrix::from_rows(&[[1.0, 0.0], [a, 1.0]]).expect("finite alpha")
}

/// Orthogonal factor of [`l_alpha`]: `[[1, -a], [a, 1]] / √(1 + a²)`.
pub fn q_alpha(a: f64) -> Matrix {
    Matrix::from_rows(&[[1.0, -a], [a, 1.0]]).expect("finite alpha").scale(1.0 / (1.0 + a * a).sqrt())
}

// Entry formulas are written once over this trait and instantiated in exact
// integers (small n) and in floating point (large n).
trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn int(v: i64) -> Self;
    fn pow2(e: u32) -> Self;
    fn alpha(j: usize) -> Self;
    /// Exact halving (callers only halve even integers).
    fn half(self) -> Self;
}

impl Scalar for i128 {
    fn int(v: i64) -> Self {
        v as i128
    }
    fn pow2(e: u32) -> Self {
        1i128 << e
    }
    fn alpha(j: usize) -> Self {
        debug_assert!(j >= 1);
        (2 * (1i128 << (2 * (j - 1))) + 1) / 3
    }
    fn half(self) -> Self {
        debug_assert!(self % 2 == 0);
        self / 2
    }
}

impl Scalar for f64 {
    fn int(v: i64) -> Self {
        v as f64
    }
    fn pow2(e: u32) -> Self {
        (e as f64).exp2()
    }
    fn alpha(j: usize) -> Self {
        1.0 + 2.0 / 3.0 * ((2.0 * (j as f64 - 1.0)).exp2() - 1.0)
    }
    fn half(self) -> Self {
        self * 0.5
    }
}

/// `α_j = 1 + (2/3)(4^{j-1} - 1)`, `j ≥ 1`; exact for `j ≤ 27`.
pub fn alpha(j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::InvalidArgument("alpha is indexed from 1".into()));
    }
    if j > OVERFLOW_ORDER_LIMIT {
        return Err(Error::Overflow(format!("alpha({j})")));
    }
    Ok(if j <= EXACT_ORDER_LIMIT { <i128 as Scalar>::alpha(j) as f64 } else { <f64 as Scalar>::alpha(j) })
}

/// `2^{e} (α_k - 1)` for `e ≥ -1`; `α_k - 1` is even for `k ≥ 2` and zero for `k = 1`.
fn scaled_alpha_gap<T: Scalar>(e: i64, k: usize) -> T {
    let gap = T::alpha(k) - T::int(1);
    if e >= 0 {
        T::pow2(e as u32) * gap
    } else {
        gap.half()
    }
}

/// Unnormalized closed-form entry (1-based indices).
fn qhat_entry<T: Scalar>(n: usize, i: usize, j: usize) -> T {
    if j == n - 1 {
        return if i == n - 1 {
            T::int(1)
        } else if i == n {
            T::int(-1)
        } else {
            T::int(0)
        };
    }
    if j == n {
        return if i < n { T::pow2((n - 1 - i) as u32) } else { T::int(1) };
    }
    let m = T::int((n - j - 1) as i64);
    if i < j {
        -(m * T::pow2((j - i - 1) as u32))
    } else if i == j {
        T::int((n - j) as i64) * (T::alpha(j) - T::int(1)) + T::int(1)
    } else {
        -T::alpha(j)
    }
}

/// Unnormalized entry of the `k`-th intermediate (1-based indices).
fn qhat_k_entry<T: Scalar>(n: usize, k: usize, i: usize, j: usize) -> T {
    let (ni, nj, nk) = (i as i64, j as i64, k as i64);
    let nn = n as i64;
    if j == n - 1 {
        return if i == n - 1 {
            T::int(1)
        } else if i == n && k < n {
            T::int(-1)
        } else {
            T::int(0)
        };
    }
    if j == n {
        return if k < i && i < n {
            T::pow2((nn - ni - 1) as u32) + scaled_alpha_gap(nn - nk - 1, k)
        } else if i < n {
            // i ≤ k < n, or i < k = n
            T::pow2((nn - ni - 1) as u32) * T::alpha(i)
        } else if k < n {
            T::int(1) + scaled_alpha_gap(nn - nk - 1, k)
        } else {
            T::int(2) * T::alpha(n - 1)
        };
    }
    let m = T::int(nn - nj - 1);
    if i < j {
        if k < i {
            -(m * (T::pow2((nj - ni - 1) as u32) + scaled_alpha_gap(nj - nk - 1, k)))
        } else {
            -(m * T::pow2((nj - ni - 1) as u32) * T::alpha(i))
        }
    } else if i == j {
        if k < i {
            T::int(nn - nj) * (T::alpha(j) - T::int(1)) + T::int(1) - m * scaled_alpha_gap(nj - nk - 1, k)
        } else {
            (T::int(nn - nj + 1) * (T::alpha(j) - T::int(1))).half() + T::int(1)
        }
    } else if k <= j {
        -T::alpha(j) - m * scaled_alpha_gap(nj - nk - 1, k)
    } else {
        T::int(0)
    }
}

/// Diagonal of the closed-form Gram matrix `Q̂ᵀ Q̂` (1-based `j`).
fn dhat_entry<T: Scalar>(n: usize, j: usize) -> T {
    if j == 1 {
        T::int(n as i64)
    } else if j == n - 1 {
        T::int(2)
    } else if j == n {
        T::int(2) * T::alpha(n - 1)
    } else {
        let a = T::alpha(j);
        let d = T::int((n - j) as i64);
        (d * d * (a - T::int(1)) * (T::int(2) * a - T::int(1))).half()
            + d * (a * a + a - T::int(1))
            + T::int(2) * T::alpha(j - 1)
    }
}

/// Exact integer closed form: the unnormalized factor (row-major) and its
/// column Gram diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactQn {
    pub n: usize,
    pub qhat: Vec<i128>,
    pub dhat: Vec<i128>,
}

impl ExactQn {
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.qhat[i * self.n + j]
    }
}

pub fn qn_hat_exact(n: usize) -> Result<ExactQn> {
    require_order(n, 2, "qn_hat_exact")?;
    if n > EXACT_ORDER_LIMIT {
        return Err(Error::Overflow(format!("exact closed form limited to n <= {EXACT_ORDER_LIMIT}")));
    }
    let mut qhat = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            qhat.push(qhat_entry::<i128>(n, i, j));
        }
    }
    let dhat = (1..=n).map(|j| dhat_entry::<i128>(n, j)).collect();
    Ok(ExactQn { n, qhat, dhat })
}

/// Exact integer `k`-th intermediate of the unnormalized factor (row-major, 1-based `k`).
pub fn qn_hat_intermediate_exact(n: usize, k: usize) -> Result<Vec<i128>> {
    require_order(n, 2, "qn_hat_intermediate_exact")?;
    if n > EXACT_ORDER_LIMIT {
        return Err(Error::Overflow(format!("exact closed form limited to n <= {EXACT_ORDER_LIMIT}")));
    }
    check_step(n, k)?;
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            out.push(qhat_k_entry::<i128>(n, k, i, j));
        }
    }
    Ok(out)
}

fn check_step(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Index(format!("step {k} outside 1..={n}")));
    }
    Ok(())
}

/// `1/√D̂_jj` for each column. Above the exact range the diagonal would
/// overflow when squared, so column norms are taken with scaling instead.
fn column_scales(n: usize) -> Vec<f64> {
    if n <= EXACT_ORDER_LIMIT {
        return (1..=n).map(|j| 1.0 / (dhat_entry::<i128>(n, j) as f64).sqrt()).collect();
    }
    (1..=n)
        .map(|j| {
            let col: Vec<f64> = (1..=n).map(|i| qhat_entry::<f64>(n, i, j)).collect();
            let s = col.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            let norm = s * col.iter().map(|v| (v / s) * (v / s)).sum::<f64>().sqrt();
            1.0 / norm
        })
        .collect()
}

fn assemble(n: usize, entry: impl Fn(usize, usize) -> f64) -> Matrix {
    let scales = column_scales(n);
    Matrix::from_fn(n, n, |i, j| entry(i + 1, j + 1) * scales[j])
}

/// Closed-form orthogonal factor of `wilkinson_l(n)`.
pub fn qn_closed_form(n: usize) -> Result<Matrix> {
    require_order(n, 2, "qn_closed_form")?;
    overflow_guard(n)?;
    Ok(if n <= EXACT_ORDER_LIMIT {
        assemble(n, |i, j| qhat_entry::<i128>(n, i, j) as f64)
    } else {
        assemble(n, |i, j| qhat_entry::<f64>(n, i, j))
    })
}

/// Closed form of the `k`-th (1-based) GENP intermediate of [`qn_closed_form`].
pub fn qn_intermediate(n: usize, k: usize) -> Result<Matrix> {
    require_order(n, 2, "qn_intermediate")?;
    overflow_guard(n)?;
    check_step(n, k)?;
    Ok(if n <= EXACT_ORDER_LIMIT {
        assemble(n, |i, j| qhat_k_entry::<i128>(n, k, i, j) as f64)
    } else {
        assemble(n, |i, j| qhat_k_entry::<f64>(n, k, i, j))
    })
}

/// Largest intermediate entry of the closed form, `√(2 α_{n-1})`.
pub fn qn_max_pivot(n: usize) -> Result<f64> {
    require_order(n, 2, "qn_max_pivot")?;
    Ok((2.0 * alpha(n - 1)?).sqrt())
}

/// Growth of the closed-form factor under partial pivoting, taken from the
/// closed-form intermediates rather than from a factorization.
pub fn qn_growth(n: usize) -> Result<GrowthReport> {
    let q = qn_closed_form(n)?;
    let mut rho_two = 0.0_f64;
    for k in 1..=n {
        rho_two = rho_two.max(spectral_norm(&qn_intermediate(n, k)?)?);
    }
    Ok(GrowthReport {
        rho_max: qn_max_pivot(n)? / q.max_norm(),
        rho_two: rho_two / spectral_norm(&q)?,
        arg_step: n - 1,
        arg_entry: (n - 1, n - 1),
    })
}

/// `D Q D̃` for sign vectors `d`, `dt`.
pub fn sign_conjugates(q: &Matrix, d: &[f64], dt: &[f64]) -> Result<Matrix> {
    if d.len() != q.rows() || dt.len() != q.cols() {
        return Err(Error::Dimension(format!(
            "sign vectors of length {} and {} for {}x{}",
            d.len(),
            dt.len(),
            q.rows(),
            q.cols()
        )));
    }
    if d.iter().chain(dt).any(|&s| s != 1.0 && s != -1.0) {
        return Err(Error::InvalidArgument("sign vectors must hold only +1 and -1".into()));
    }
    Ok(q.scale_rows(d).scale_columns(dt))
}

/// Entries of `L⁻¹` for a unipotent lower triangular `L`: `γ_{kℓ}` with
/// `γ_{kk} = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable {
    gamma: Matrix,
}

impl GammaTable {
    pub fn order(&self) -> usize {
        self.gamma.rows()
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.gamma[(k, l)]
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.gamma
    }

    /// `‖γ_k‖₁ = 1 + Σ_{ℓ<k} |γ_{kℓ}|`.
    pub fn row_one_norm(&self, k: usize) -> f64 {
        self.gamma.row(k)[..=k].iter().map(|v| v.abs()).sum()
    }

    pub fn row_two_norm(&self, k: usize) -> f64 {
        self.gamma.row(k)[..=k].iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `max_k ‖γ_k‖₁` and the largest `k` attaining it.
    pub fn max_row_one_norm(&self) -> (f64, usize) {
        let mut best = (0.0, 0);
        for k in 0..self.order() {
            let v = self.row_one_norm(k);
            if v >= best.0 {
                best = (v, k);
            }
        }
        best
    }

    pub fn max_row_two_norm(&self) -> f64 {
        (0..self.order()).map(|k| self.row_two_norm(k)).fold(0.0, f64::max)
    }
}

fn check_unipotent(l: &Matrix) -> Result<usize> {
    let n = l.order()?;
    if !l.is_lower_unit_triangular(0.0) {
        return Err(Error::InvalidArgument("expected unipotent lower triangular matrix".into()));
    }
    Ok(n)
}

/// `γ = L⁻¹` by forward substitution.
pub fn gamma_by_inverse(l: &Matrix) -> Result<GammaTable> {
    let n = check_unipotent(l)?;
    let mut g = Matrix::identity(n);
    for c in 0..n {
        for k in c + 1..n {
            let s: f64 = (c..k).map(|m| l[(k, m)] * g[(m, c)]).sum();
            g[(k, c)] = -s;
        }
    }
    Ok(GammaTable { gamma: g })
}

/// Calls `visit` with the interior vertices of every decreasing path from
/// `k` down to `l` (`k > l`).
fn for_each_path(k: usize, l: usize, mut visit: impl FnMut(&[usize])) {
    let interior: Vec<usize> = (l + 1..k).rev().collect();
    let mut buf = Vec::with_capacity(interior.len());
    for mask in 0u32..(1u32 << interior.len()) {
        buf.clear();
        buf.extend(interior.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v));
        visit(&buf);
    }
}

/// `γ` by summing `Π (-L_rs)` over all decreasing paths; exponential cost.
pub fn gamma_by_paths(l: &Matrix) -> Result<GammaTable> {
    let n = check_unipotent(l)?;
    if n > PATH_ENUMERATION_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "path enumeration limited to n <= {PATH_ENUMERATION_LIMIT}, got {n}"
        )));
    }
    let mut g = Matrix::identity(n);
    for k in 0..n {
        for c in 0..k {
            let mut total = 0.0;
            for_each_path(k, c, |mid| {
                let mut prev = k;
                let mut prod = 1.0;
                for &v in mid.iter().chain(std::iter::once(&c)) {
                    prod *= -l[(prev, v)];
                    prev = v;
                }
                total += prod;
            });
            g[(k, c)] = total;
        }
    }
    Ok(GammaTable { gamma: g })
}

/// Number of decreasing paths from vertex `n` to vertex `m` (`n > m`), counted by enumeration.
pub fn path_count(n: usize, m: usize) -> Result<u64> {
    if m >= n || n > PATH_ENUMERATION_LIMIT + 1 {
        return Err(Error::InvalidArgument(format!("path count for ({n}, {m})")));
    }
    let mut count = 0;
    for_each_path(n, m, |_| count += 1);
    Ok(count)
}

fn check_bounded(l: &Matrix) -> Result<()> {
    if l.max_norm() > 1.0 {
        return Err(Error::Contract("lower factor must satisfy ‖L‖_max <= 1".into()));
    }
    Ok(())
}

/// Largest GEPP growth over all matrices whose GENP lower factor is `l`.
pub fn worst_growth_given_l(l: &Matrix) -> Result<f64> {
    check_bounded(l)?;
    Ok(gamma_by_inverse(l)?.max_row_one_norm().0)
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// A matrix with GENP lower factor `l`, unit max-norm, and final `U` whose
/// largest entry is [`worst_growth_given_l`]. Intermediate entries may be
/// larger for some `l`, so its full GEPP growth is at least that value.
///
/// The first `n-1` columns are those of `l`; the last column is chosen so
/// that the last column of `U` carries `‖γ_k‖₁` in row `k`, where `k` is the
/// largest row attaining the maximum.
pub fn worst_matrix_given_l(l: &Matrix) -> Result<Matrix> {
    check_bounded(l)?;
    let g = gamma_by_inverse(l)?;
    let n = g.order();
    let (_, k) = g.max_row_one_norm();
    let mut v = vec![0.0; n];
    for (ell, slot) in v.iter_mut().enumerate().take(k) {
        *slot = sgn(g.get(k, ell));
    }
    v[k] = 1.0;
    if k < n - 1 {
        let s: f64 = (0..n - 1).map(|ell| g.get(n - 1, ell) * v[ell]).sum();
        v[n - 1] = if s == 0.0 { 1.0 } else { sgn(s) };
    }
    let mut a = l.clone();
    for i in 0..n {
        a[(i, n - 1)] = v[i];
    }
    Ok(a)
}

/// Orthogonal QR factor of `l`; it is PP with GENP lower factor `l`.
pub fn pp_orthogonal_of(l: &Matrix) -> Result<Matrix> {
    check_unipotent(l)?;
    check_bounded(l)?;
    orthogonal_factor(l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpGrowthBound {
    pub bound: f64,
    /// Measured GEPP growth of the orthogonal factor.
    pub rho_gepp: f64,
}

impl PpGrowthBound {
    /// Whether the measured growth respects the bound up to relative round-off.
    /// The bound is attained for `L_n`, so the slack has to scale with it.
    /// It controls the final `U`; for some `l` the intermediates overshoot it.
    pub fn holds(&self) -> bool {
        self.rho_gepp <= self.bound * (1.0 + 1e-10)
    }
}

/// `min(1, max_k‖γ_k‖₂ / (‖Q‖_max max_k‖γ_k‖₁)) · max_k‖γ_k‖₁` for the
/// orthogonal factor `Q` of `l`.
pub fn pp_growth_upper_bound(l: &Matrix) -> Result<PpGrowthBound> {
    let q = pp_orthogonal_of(l)?;
    let g = gamma_by_inverse(l)?;
    let (one, _) = g.max_row_one_norm();
    let ratio = g.max_row_two_norm() / (q.max_norm() * one);
    Ok(PpGrowthBound { bound: ratio.min(1.0) * one, rho_gepp: growth_factor(&q, PivotStrategy::Partial)? })
}

/// Names accepted by [`by_name`].
pub const MODEL_NAMES: &[&str] =
    &["wilkinsonA", "wilkinsonL", "scaledA", "b3", "cryerC", "q3", "q4", "qn", "hadamard"];

/// Looks up a named family; `n` is ignored by fixed-size models.
pub fn by_name(name: &str, n: usize) -> Result<Matrix> {
    match name {
        "wilkinsonA" => wilkinson_a(n),
        "wilkinsonL" => wilkinson_l(n),
        "wilkinsonU" => wilkinson_u(n),
        "scaledA" => scaled_wilkinson(n),
        "b3" => Ok(b3()),
        "cryerC" => Ok(cryer_c()),
        "q3" => Ok(q3()),
        "q4" => Ok(q4()),
        "qn" => qn_closed_form(n),
        "hadamard" => hadamard_scaled(n),
        other => Err(Error::InvalidArgument(format!(
            "unknown model {other:?}; expected one of {}",
            MODEL_NAMES.join(", ")
        ))),
    }
}
