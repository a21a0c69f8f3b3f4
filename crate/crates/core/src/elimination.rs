//! Gaussian elimination with no, partial, or complete pivoting.
//!
//! Every run records the permutations, both triangular factors, the pivot
//! sequence and, for each step, the largest magnitude in the block that is
//! still to be triangularized. Since rows above the active block are frozen
//! copies of earlier active blocks, the maximum of those per-step block
//! maxima equals `max_k ‖A^(k)‖_max`, so the max-norm growth factor never
//! needs the intermediate matrices themselves. The L² growth factor does,
//! and replays them from `P A Q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, Matrix, Permutation};

/// Absolute threshold below which a pivot counts as zero when no pivoting is used.
pub const ZERO_PIVOT_THRESHOLD: f64 = 1e-300;

/// Pivot candidates within this relative distance of the largest magnitude
/// count as tied, so that ties broken only by rounding still go to the
/// smallest index.
pub const PIVOT_TIE_TOLERANCE: f64 = 1e-10;

/// Relative tie tolerance used by [`is_cp`].
pub const CP_TIE_TOLERANCE: f64 = 1e-14;

/// Tolerance on `‖L‖_max - 1` used by [`is_pp`].
pub const PP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PivotStrategy {
    None,
    Partial,
    Complete,
}

impl PivotStrategy {
    pub fn name(self) -> &'static str {
        match self {
            PivotStrategy::None => "NONE",
            PivotStrategy::Partial => "PARTIAL",
            PivotStrategy::Complete => "COMPLETE",
        }
    }
}

/// Complete record of one pivoted LU run: `P A Q = L U`.
#[derive(Debug, Clone)]
pub struct EliminationTrace {
    pub strategy: PivotStrategy,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
    pub l: Matrix,
    pub u: Matrix,
    /// Diagonal of `U` in elimination order.
    pub pivots: Vec<f64>,
    /// `step_max[k]`: largest magnitude in the untriangularized block before step `k`.
    pub step_max: Vec<f64>,
    /// Location of `step_max[k]` in the frame of `P A Q`.
    pub step_argmax: Vec<(usize, usize)>,
    pub l_max: f64,
    /// `‖A‖_max` of the factorized input.
    pub input_max: f64,
}

/// Max-norm and L² growth factors with the step and entry attaining the max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthReport {
    pub rho_max: f64,
    pub rho_two: f64,
    pub arg_step: usize,
    pub arg_entry: (usize, usize),
}

/// JSON-serializable summary of a trace for the experiment layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceDump {
    pub strategy: PivotStrategy,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub pivots: Vec<f64>,
    pub step_max: Vec<f64>,
    pub rho_max: f64,
    pub rho_two: f64,
}

fn block_max(w: &Matrix, k: usize) -> (f64, usize, usize) {
    let n = w.rows();
    let (mut best, mut bi, mut bj) = (-1.0, k, k);
    for i in k..n {
        for j in k..n {
            let v = w[(i, j)].abs();
            if v > best {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    (best, bi, bj)
}

/// First entry, in row-major order over the active block, within the pivot
/// tie tolerance of `bmax`.
fn block_pivot(w: &Matrix, k: usize, bmax: f64) -> (usize, usize) {
    let n = w.rows();
    let floor = bmax * (1.0 - PIVOT_TIE_TOLERANCE);
    for i in k..n {
        for j in k..n {
            if w[(i, j)].abs() >= floor {
                return (i, j);
            }
        }
    }
    unreachable!("the block maximum is itself a candidate")
}

/// One elimination step on the packed working matrix: multipliers are
/// stored below the diagonal of column `k`.
#[inline]
fn eliminate_column(w: &mut Matrix, k: usize, store_multipliers: bool) {
    let n = w.rows();
    let p = w[(k, k)];
    for i in k + 1..n {
        let l = w[(i, k)] / p;
        w[(i, k)] = if store_multipliers { l } else { 0.0 };
        if l != 0.0 {
            for j in k + 1..n {
                let ukj = w[(k, j)];
                w[(i, j)] -= l * ukj;
            }
        }
    }
}

/// Factorizes `a` under `strategy`.
///
/// Pivot ties, up to [`PIVOT_TIE_TOLERANCE`], resolve to the smallest row
/// index, then the smallest column index.
pub fn factorize(a: &Matrix, strategy: PivotStrategy) -> Result<EliminationTrace> {
    let n = a.order()?;
    let mut w = a.clone();
    let mut row_perm = Permutation::identity(n);
    let mut col_perm = Permutation::identity(n);
    let mut pivots = Vec::with_capacity(n);
    let mut step_max = Vec::with_capacity(n);
    // (original row, original column) of each step's block maximum
    let mut raw_argmax = Vec::with_capacity(n);

    for k in 0..n {
        let (bmax, bi, bj) = block_max(&w, k);
        step_max.push(bmax);
        raw_argmax.push((row_perm.as_slice()[bi], col_perm.as_slice()[bj]));

        let (pr, pc) = match strategy {
            PivotStrategy::None => {
                if w[(k, k)].abs() < ZERO_PIVOT_THRESHOLD {
                    return Err(Error::ZeroPivot { step: k });
                }
                (k, k)
            }
            PivotStrategy::Partial => {
                let best = (k..n).map(|i| w[(i, k)].abs()).fold(0.0, f64::max);
                if best == 0.0 {
                    return Err(Error::Singular { step: k });
                }
                let floor = best * (1.0 - PIVOT_TIE_TOLERANCE);
                let r = (k..n).find(|&i| w[(i, k)].abs() >= floor).expect("column maximum is a candidate");
                (r, k)
            }
            PivotStrategy::Complete => {
                if bmax == 0.0 {
                    return Err(Error::Singular { step: k });
                }
                block_pivot(&w, k, bmax)
            }
        };
        if pr != k {
            w.swap_rows(k, pr);
            row_perm.swap(k, pr);
        }
        if pc != k {
            w.swap_cols(k, pc);
            col_perm.swap(k, pc);
        }
        pivots.push(w[(k, k)]);
        eliminate_column(&mut w, k, true);
    }

    let mut l = Matrix::identity(n);
    let mut u = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if j < i {
                l[(i, j)] = w[(i, j)];
            } else {
                u[(i, j)] = w[(i, j)];
            }
        }
    }
    let l_max = l.max_norm();

    let rinv = row_perm.inverse();
    let cinv = col_perm.inverse();
    let step_argmax = raw_argmax
        .into_iter()
        .map(|(r, c)| (rinv.as_slice()[r], cinv.as_slice()[c]))
        .collect();

    Ok(EliminationTrace {
        strategy,
        row_perm,
        col_perm,
        l,
        u,
        pivots,
        step_max,
        step_argmax,
        l_max,
        input_max: a.max_norm(),
    })
}

impl EliminationTrace {
    pub fn order(&self) -> usize {
        self.pivots.len()
    }

    /// Index of the first step attaining `max_k step_max[k]`.
    pub fn arg_step(&self) -> usize {
        let mut best = 0;
        for (k, &v) in self.step_max.iter().enumerate() {
            if v > self.step_max[best] {
                best = k;
            }
        }
        best
    }

    /// `ρ = ‖L‖_max max_k ‖A^(k)‖_max / ‖A‖_max`.
    pub fn rho_max(&self) -> f64 {
        self.l_max * self.step_max[self.arg_step()] / self.input_max
    }

    /// `P A Q` for the input `a` this trace was produced from.
    pub fn permuted_input(&self, a: &Matrix) -> Matrix {
        self.col_perm.permute_cols(&self.row_perm.permute_rows(a))
    }

    /// Solves `A x = b` using the factors.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(b.len(), n);
        let p = self.row_perm.as_slice();
        let mut y: Vec<f64> = (0..n).map(|i| b[p[i]]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.l[(i, j)] * y[j]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.u[(i, j)] * y[j]).sum();
            y[i] = (y[i] - s) / self.u[(i, i)];
        }
        let q = self.col_perm.as_slice();
        let mut x = vec![0.0; n];
        for j in 0..n {
            x[q[j]] = y[j];
        }
        x
    }

    /// Solves `A^T x = c` using the factors.
    pub fn solve_transpose(&self, c: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(c.len(), n);
        let q = self.col_perm.as_slice();
        // U^T s = Q^T c
        let mut s: Vec<f64> = (0..n).map(|j| c[q[j]]).collect();
        for i in 0..n {
            let acc: f64 = (0..i).map(|j| self.u[(j, i)] * s[j]).sum();
            s[i] = (s[i] - acc) / self.u[(i, i)];
        }
        // L^T t = s
        for i in (0..n).rev() {
            let acc: f64 = (i + 1..n).map(|j| self.l[(j, i)] * s[j]).sum();
            s[i] -= acc;
        }
        let p = self.row_perm.as_slice();
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[p[i]] = s[i];
        }
        x
    }

    pub fn min_abs_pivot(&self) -> f64 {
        self.pivots.iter().fold(f64::INFINITY, |m, p| m.min(p.abs()))
    }

    pub fn dump(&self, report: &GrowthReport) -> TraceDump {
        TraceDump {
            strategy: self.strategy,
            row_perm: self.row_perm.as_slice().to_vec(),
            col_perm: self.col_perm.as_slice().to_vec(),
            pivots: self.pivots.clone(),
            step_max: self.step_max.clone(),
            rho_max: report.rho_max,
            rho_two: report.rho_two,
        }
    }
}

/// Calls `visit(k, A^(k))` for `k = 1..=n` (1-based, `A^(1) = P A Q`).
fn replay_intermediates(paq: &Matrix, upto: usize, mut visit: impl FnMut(usize, &Matrix)) {
    let mut w = paq.clone();
    for k in 1..=upto {
        visit(k, &w);
        if k < upto {
            eliminate_column(&mut w, k - 1, false);
        }
    }
}

/// Max-norm growth `ρ` and L² growth `ρ₂` of the run recorded in `trace`.
pub fn growth(trace: &EliminationTrace, a: &Matrix) -> Result<GrowthReport> {
    let n = a.order()?;
    if n != trace.order() {
        return Err(Error::Dimension(format!(
            "trace of order {} does not match {n}x{n} input",
            trace.order()
        )));
    }
    let paq = trace.permuted_input(a);
    let base = spectral_norm(a)?;
    let mut best2 = 0.0_f64;
    let mut failure = None;
    replay_intermediates(&paq, n, |_, ak| match spectral_norm(ak) {
        Ok(s) => best2 = best2.max(s),
        Err(e) => failure = Some(e),
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let arg_step = trace.arg_step();
    Ok(GrowthReport {
        rho_max: trace.rho_max(),
        rho_two: best2 / base,
        arg_step,
        arg_entry: trace.step_argmax[arg_step],
    })
}

/// Factorizes and returns only the max-norm growth factor.
pub fn growth_factor(a: &Matrix, strategy: PivotStrategy) -> Result<f64> {
    factorize(a, strategy).map(|t| t.rho_max())
}

/// GECP growth from the final factor only: `max_k |U_kk| / |U_11|`.
pub fn gecp_growth_simple(trace: &EliminationTrace) -> Result<f64> {
    if trace.strategy != PivotStrategy::Complete {
        return Err(Error::Contract(format!(
            "simple growth form requires COMPLETE pivoting, got {}",
            trace.strategy.name()
        )));
    }
    let first = trace.pivots[0].abs();
    Ok(trace.pivots.iter().fold(0.0_f64, |m, p| m.max(p.abs())) / first)
}

/// `A^(k)` (1-based `k`): the working matrix before step `k` of elimination
/// applied to `P A Q`, so `intermediate(a, s, 1) = P A Q` and
/// `intermediate(a, s, n) = U`.
pub fn intermediate(a: &Matrix, strategy: PivotStrategy, k: usize) -> Result<Matrix> {
    let n = a.order()?;
    if k == 0 || k > n {
        return Err(Error::Index(format!("step {k} outside 1..={n}")));
    }
    let trace = factorize(a, strategy)?;
    let paq = trace.permuted_input(a);
    let mut out = None;
    replay_intermediates(&paq, k, |step, ak| {
        if step == k {
            out = Some(ak.clone());
        }
    });
    Ok(out.expect("replay reaches step k"))
}

/// All intermediates `A^(1), .., A^(n)` of a run.
pub fn intermediates(a: &Matrix, strategy: PivotStrategy) -> Result<Vec<Matrix>> {
    let n = a.order()?;
    let trace = factorize(a, strategy)?;
    let mut out = Vec::with_capacity(n);
    replay_intermediates(&trace.permuted_input(a), n, |_, ak| out.push(ak.clone()));
    Ok(out)
}

/// Whether GEPP performs no row swaps on `a` (GENP succeeds with `‖L‖_max ≤ 1`).
pub fn is_pp(a: &Matrix) -> Result<bool> {
    factorize(a, PivotStrategy::Partial)?;
    match factorize(a, PivotStrategy::None) {
        Ok(t) => Ok(t.l_max <= 1.0 + PP_TOLERANCE),
        Err(Error::ZeroPivot { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether GECP performs no swaps on `a`: at every step the leading entry
/// of the untriangularized block is already maximal (to a relative tie
/// tolerance).
pub fn is_cp(a: &Matrix) -> Result<bool> {
    let n = a.order()?;
    factorize(a, PivotStrategy::Complete)?;
    let mut w = a.clone();
    for k in 0..n {
        let (bmax, _, _) = block_max(&w, k);
        let lead = w[(k, k)].abs();
        if lead < ZERO_PIVOT_THRESHOLD || lead < bmax * (1.0 - CP_TIE_TOLERANCE) {
            return Ok(false);
        }
        eliminate_column(&mut w, k, false);
    }
    Ok(true)
}

/// `P A Q` with the GECP permutations of `a`: a completely pivoted matrix
/// with the same GECP growth.
pub fn cp_transform(a: &Matrix) -> Result<Matrix> {
    let trace = factorize(a, PivotStrategy::Complete)?;
    Ok(trace.permuted_input(a))
}

/// Closed-form growth of a 2x2 matrix:
/// GEPP `max(1, |det A| / (‖A‖_max ‖A_{:,1}‖_∞))`, GECP `max(1, |det A| / ‖A‖_max²)`.
pub fn growth_2x2_closed_form(a: &Matrix, strategy: PivotStrategy) -> Result<f64> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Dimension(format!("expected 2x2, got {}x{}", a.rows(), a.cols())));
    }
    let det = (a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]).abs();
    if det == 0.0 {
        return Err(Error::Singular { step: 1 });
    }
    let m = a.max_norm();
    match strategy {
        PivotStrategy::Partial => {
            let c1 = a[(0, 0)].abs().max(a[(1, 0)].abs());
            Ok((det / (m * c1)).max(1.0))
        }
        PivotStrategy::Complete => Ok((det / (m * m)).max(1.0)),
        PivotStrategy::None => Err(Error::Contract(
            "closed form is defined for PARTIAL and COMPLETE only".into(),
        )),
    }
}
