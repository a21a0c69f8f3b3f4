//! Monte Carlo harness: growth-pair sampling, summary statistics, 2-D
//! histograms, neighborhood studies, and the exact-value check suite.

use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::elimination::{growth_factor, intermediates, PivotStrategy};
use crate::error::{Error, Result};
use crate::linalg::{householder_qr, Matrix};
use crate::models;
use crate::parallel::map_indexed;
use crate::randgen::{gaussian_step, ginibre, haar_orthogonal, orthogonal_step_raw, RngStream};
use crate::search::StepKind;

pub const DEFAULT_PROPORTION_TOL: f64 = 0.05;
pub const DEFAULT_GRID: usize = 512;
pub const ZERO_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthPair {
    pub gepp: f64,
    pub gecp: f64,
}

impl GrowthPair {
    pub fn of(a: &Matrix) -> Result<Self> {
        Ok(Self {
            gepp: growth_factor(a, PivotStrategy::Partial)?,
            gecp: growth_factor(a, PivotStrategy::Complete)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleEnsemble {
    Haar,
    Ginibre,
}

/// Samples in index order plus the number of draws whose factorization failed.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSample {
    pub pairs: Vec<GrowthPair>,
    pub failures: usize,
}

fn collect_pairs(results: Vec<Result<GrowthPair>>) -> PairSample {
    let mut pairs = Vec::with_capacity(results.len());
    let mut failures = 0;
    for r in results {
        match r {
            Ok(p) => pairs.push(p),
            Err(_) => failures += 1,
        }
    }
    PairSample { pairs, failures }
}

/// `count` iid growth pairs; sample `i` draws from `rng.derive(i)`.
pub fn growth_pairs(ensemble: SampleEnsemble, n: usize, count: usize, rng: &RngStream) -> Result<PairSample> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidArgument("order and count must be positive".into()));
    }
    let results = map_indexed(count, |i| {
        let mut r = rng.derive(i as u64);
        let a = match ensemble {
            SampleEnsemble::Haar => haar_orthogonal(n, &mut r)?,
            SampleEnsemble::Ginibre => ginibre(n, n, &mut r),
        };
        GrowthPair::of(&a)
    });
    Ok(collect_pairs(results))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub median: f64,
    pub mean: f64,
    pub std: f64,
}

impl Moments {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("statistics of an empty sample".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let m = sorted.len();
        let median = if m % 2 == 1 { sorted[m / 2] } else { 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]) };
        let mean = values.iter().sum::<f64>() / m as f64;
        let std = if m > 1 {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1) as f64).sqrt()
        } else {
            0.0
        };
        Ok(Self { median, mean, std })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SummaryStats {
    pub count: usize,
    pub tol: f64,
    pub gepp: Moments,
    pub gecp: Moments,
    /// `P(gepp + tol < gecp)`
    pub p_less: f64,
    /// `P(|gepp - gecp| <= tol)`, the complement of the other two
    pub p_equal: f64,
    /// `P(gepp > gecp + tol)`
    pub p_greater: f64,
}

pub fn summarize(pairs: &[GrowthPair], tol: f64) -> Result<SummaryStats> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no pairs to summarize".into()));
    }
    let gepp: Vec<f64> = pairs.iter().map(|p| p.gepp).collect();
    let gecp: Vec<f64> = pairs.iter().map(|p| p.gecp).collect();
    let less = pairs.iter().filter(|p| p.gepp + tol < p.gecp).count();
    let greater = pairs.iter().filter(|p| p.gepp > p.gecp + tol).count();
    let m = pairs.len();
    let equal = m - less - greater;
    Ok(SummaryStats {
        count: m,
        tol,
        gepp: Moments::of(&gepp)?,
        gecp: Moments::of(&gecp)?,
        p_less: less as f64 / m as f64,
        p_equal: equal as f64 / m as f64,
        p_greater: greater as f64 / m as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl Axis {
    fn new(lo: f64, hi: f64, grid: usize) -> Self {
        // a degenerate range collapses to a single bin
        let bins = if hi > lo { grid } else { 1 };
        Self { lo, hi, bins }
    }

    fn bin(&self, v: f64) -> usize {
        if self.bins == 1 {
            return 0;
        }
        let t = (v - self.lo) / (self.hi - self.lo) * self.bins as f64;
        (t.floor().max(0.0) as usize).min(self.bins - 1)
    }

    pub fn center(&self, b: usize) -> f64 {
        if self.bins == 1 {
            return self.lo;
        }
        self.lo + (b as f64 + 0.5) * (self.hi - self.lo) / self.bins as f64
    }
}

/// Normalized 2-D histogram; rows bin GEPP growth, columns GECP growth.
/// Out-of-range samples are clamped into the edge bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Histogram2D {
    pub gepp_axis: Axis,
    pub gecp_axis: Axis,
    pub mass: Vec<f64>,
}

pub type Range = (f64, f64);

/// Default range `[1, 1.01 * max]` per axis.
pub fn auto_range(values: impl Iterator<Item = f64>) -> Range {
    let max = values.fold(1.0_f64, f64::max);
    (1.0, if max > 1.0 { max * 1.01 } else { 1.0 })
}

pub fn histogram2d(pairs: &[GrowthPair], grid: usize, ranges: Option<(Range, Range)>) -> Result<Histogram2D> {
    if pairs.is_empty() || grid == 0 {
        return Err(Error::InvalidArgument("histogram needs samples and a positive grid".into()));
    }
    let (rx, ry) = ranges.unwrap_or_else(|| {
        (auto_range(pairs.iter().map(|p| p.gepp)), auto_range(pairs.iter().map(|p| p.gecp)))
    });
    if !(rx.1 >= rx.0 && ry.1 >= ry.0) {
        return Err(Error::InvalidArgument(format!("inverted histogram range {rx:?} x {ry:?}")));
    }
    let gx = Axis::new(rx.0, rx.1, grid);
    let gy = Axis::new(ry.0, ry.1, grid);
    let mut mass = vec![0.0; gx.bins * gy.bins];
    let w = 1.0 / pairs.len() as f64;
    for p in pairs {
        mass[gx.bin(p.gepp) * gy.bins + gy.bin(p.gecp)] += w;
    }
    Ok(Histogram2D { gepp_axis: gx, gecp_axis: gy, mass })
}

impl Histogram2D {
    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mass[i * self.gecp_axis.bins + j]
    }

    /// Mass of bins whose centers satisfy `|gepp - gecp| < tol`.
    pub fn band_mass(&self, tol: f64) -> f64 {
        let mut total = 0.0;
        for i in 0..self.gepp_axis.bins {
            for j in 0..self.gecp_axis.bins {
                if (self.gepp_axis.center(i) - self.gecp_axis.center(j)).abs() < tol {
                    total += self.get(i, j);
                }
            }
        }
        total
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        Matrix::new(self.gepp_axis.bins, self.gecp_axis.bins, self.mass.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnchorReport {
    pub anchor: f64,
    pub within_coarse: f64,
    pub within_fine: f64,
}

pub const ANCHOR_COARSE: f64 = 0.01;
pub const ANCHOR_FINE: f64 = 0.002;

fn anchor_reports(values: &[f64], anchors: &[f64]) -> Vec<AnchorReport> {
    let frac = |a: f64, d: f64| values.iter().filter(|v| (*v - a).abs() < d).count() as f64 / values.len() as f64;
    anchors
        .iter()
        .map(|&a| AnchorReport { anchor: a, within_coarse: frac(a, ANCHOR_COARSE), within_fine: frac(a, ANCHOR_FINE) })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodReport {
    pub sample: PairSample,
    pub gepp_anchors: Vec<AnchorReport>,
    pub gecp_anchors: Vec<AnchorReport>,
}

/// Single-step `eps`-neighbors of `a0`. Orthogonal steps use the ball
/// radius `eps / √(n(n-1))` without the Frobenius-norm divisor; Gaussian
/// steps add `(eps/√n) G`.
pub fn neighborhood_study(
    a0: &Matrix,
    eps: f64,
    count: usize,
    step: StepKind,
    gepp_anchors: &[f64],
    gecp_anchors: &[f64],
    rng: &RngStream,
) -> Result<NeighborhoodReport> {
    let n = a0.order()?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let r = if n > 1 { eps / ((n * (n - 1)) as f64).sqrt() } else { 0.0 };
    let results = map_indexed(count, |i| {
        let mut g = rng.derive(i as u64);
        let b = match step {
            StepKind::Orthogonal => orthogonal_step_raw(a0, r, &mut g)?,
            StepKind::Gaussian => gaussian_step(a0, eps, &mut g)?,
        };
        GrowthPair::of(&b)
    });
    let sample = collect_pairs(results);
    if sample.pairs.is_empty() {
        return Err(Error::Contract("every neighbor failed to factorize".into()));
    }
    let gepp: Vec<f64> = sample.pairs.iter().map(|p| p.gepp).collect();
    let gecp: Vec<f64> = sample.pairs.iter().map(|p| p.gecp).collect();
    Ok(NeighborhoodReport {
        gepp_anchors: anchor_reports(&gepp, gepp_anchors),
        gecp_anchors: anchor_reports(&gecp, gecp_anchors),
        sample,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpModel {
    /// Closed-form orthogonal factor of Wilkinson's lower factor.
    Qn,
    /// Wilkinson's matrix.
    An,
}

impl ExpModel {
    pub fn build(self, n: usize) -> Result<Matrix> {
        match self {
            ExpModel::Qn => models::qn_closed_form(n),
            ExpModel::An => models::wilkinson_a(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NeighborDifferenceStats {
    pub model: ExpModel,
    pub n: usize,
    pub eps: f64,
    pub count: usize,
    pub failures: usize,
    /// GECP growth of the unperturbed model.
    pub base_gecp: f64,
    pub median: f64,
    pub mean: f64,
    pub std: f64,
    /// `P(|difference| < 0.01)`
    pub p_zero: f64,
}

/// Statistics of `ρ^GECP(M) - ρ^GEPP(M + (eps/√n) G)` over Gaussian neighbors of the model `M`.
pub fn exponential_model_neighbor_stats(
    model: ExpModel,
    n: usize,
    eps: f64,
    count: usize,
    rng: &RngStream,
) -> Result<NeighborDifferenceStats> {
    if n < 2 || count == 0 {
        return Err(Error::InvalidArgument("needs n >= 2 and a positive count".into()));
    }
    let m = model.build(n)?;
    let base_gecp = growth_factor(&m, PivotStrategy::Complete)?;
    let diffs = map_indexed(count, |i| -> Result<f64> {
        let mut g = rng.derive(i as u64);
        Ok(base_gecp - growth_factor(&gaussian_step(&m, eps, &mut g)?, PivotStrategy::Partial)?)
    });
    let failures = diffs.iter().filter(|d| d.is_err()).count();
    let diffs: Vec<f64> = diffs.into_iter().filter_map(Result::ok).collect();
    let mo = Moments::of(&diffs)?;
    Ok(NeighborDifferenceStats {
        model,
        n,
        eps,
        count: diffs.len(),
        failures,
        base_gecp,
        median: mo.median,
        mean: mo.mean,
        std: mo.std,
        p_zero: diffs.iter().filter(|d| d.abs() < ZERO_TOL).count() as f64 / diffs.len() as f64,
    })
}

/// `max_j max_i |a_ij - b_ij| / ‖b_{:,j}‖_∞`.
pub fn column_relative_deviation(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut worst = 0.0_f64;
    for j in 0..a.cols() {
        let scale = (0..b.rows()).map(|i| b[(i, j)].abs()).fold(0.0, f64::max);
        let diff = (0..a.rows()).map(|i| (a[(i, j)] - b[(i, j)]).abs()).fold(0.0, f64::max);
        if scale > 0.0 {
            worst = worst.max(diff / scale);
        } else {
            worst = worst.max(diff);
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest observed deviation from the expected value.
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self { name: name.into(), passed: deviation <= tolerance, deviation, tolerance }
    }

    fn failed(name: impl Into<String>, err: &Error) -> Self {
        Self { name: format!("{} ({err})", name.into()), passed: false, deviation: f64::INFINITY, tolerance: 0.0 }
    }
}

fn run_check(name: &str, tolerance: f64, f: impl FnOnce() -> Result<f64>) -> CheckResult {
    match f() {
        Ok(d) => CheckResult::new(name, d, tolerance),
        Err(e) => CheckResult::failed(name, &e),
    }
}

/// Largest deviation of the candidate closed form from the QR factor of `L_n`.
pub fn qn_oracle_deviation(n: usize, candidate: &Matrix) -> Result<f64> {
    let (q, _) = householder_qr(&models::wilkinson_l(n)?)?;
    if (candidate.rows(), candidate.cols()) != (n, n) {
        return Err(Error::Dimension(format!("candidate is {}x{}", candidate.rows(), candidate.cols())));
    }
    Ok(candidate.max_abs_diff(&q))
}

/// GENP intermediates of `a` in exact rational arithmetic, each rounded
/// once to `f64`. Every finite double is a dyadic rational, so this is the
/// true elimination of the stored matrix, free of replay round-off.
pub fn exact_intermediates(a: &Matrix) -> Result<Vec<Matrix>> {
    let n = a.order()?;
    let mut w = Vec::with_capacity(n * n);
    for (idx, &x) in a.as_slice().iter().enumerate() {
        w.push(BigRational::from_float(x).ok_or(Error::NonFinite { row: idx / n, col: idx % n })?);
    }
    let snapshot = |w: &[BigRational]| {
        Matrix::from_fn(n, n, |i, j| w[i * n + j].to_f64().unwrap_or(f64::NAN))
    };
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(snapshot(&w));
        if k + 1 == n {
            break;
        }
        let p = w[k * n + k].clone();
        if p.is_zero() {
            return Err(Error::ZeroPivot { step: k });
        }
        for i in k + 1..n {
            let l = &w[i * n + k] / &p;
            if l.is_zero() {
                continue;
            }
            w[i * n + k] = BigRational::zero();
            for j in k + 1..n {
                let t = &l * &w[k * n + j];
                w[i * n + j] -= t;
            }
        }
    }
    Ok(out)
}

/// Largest per-column relative deviation of the closed-form intermediates
/// from GENP replayed exactly on `qn`.
pub fn qn_intermediate_deviation(n: usize, qn: &Matrix) -> Result<f64> {
    let replay = exact_intermediates(qn)?;
    let mut worst = 0.0_f64;
    for (k, ak) in replay.iter().enumerate() {
        worst = worst.max(column_relative_deviation(&models::qn_intermediate(n, k + 1)?, ak));
    }
    Ok(worst)
}

/// Relative deviation of `max_k ‖Q^(k)‖_max` from `√(2 α_{n-1})`.
pub fn qn_max_pivot_deviation(n: usize, qn: &Matrix) -> Result<f64> {
    let want = models::qn_max_pivot(n)?;
    let got = intermediates(qn, PivotStrategy::Partial)?.iter().map(Matrix::max_norm).fold(0.0, f64::max);
    Ok((got - want).abs() / want)
}

fn pair_deviation(a: &Matrix, gepp: f64, gecp: f64) -> Result<f64> {
    let p = GrowthPair::of(a)?;
    Ok((p.gepp - gepp).abs().max((p.gecp - gecp).abs()))
}

/// The exact-value check suite with the default closed form.
pub fn verify_suite(orders: RangeInclusive<usize>) -> Vec<CheckResult> {
    verify_suite_with(orders, &models::qn_closed_form)
}

/// The exact-value check suite, with the closed-form builder injectable so
/// that a corrupted builder can be shown to fail.
pub fn verify_suite_with(orders: RangeInclusive<usize>, qn: &dyn Fn(usize) -> Result<Matrix>) -> Vec<CheckResult> {
    let lo = (*orders.start()).max(2);
    let hi = *orders.end();
    let mut out = Vec::new();

    out.push(run_check("wilkinson GEPP growth is 2^(n-1)", 1e-10, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            let want = (n as f64 - 1.0).exp2();
            let got = growth_factor(&models::wilkinson_a(n)?, PivotStrategy::Partial)?;
            worst = worst.max((got - want).abs() / want);
        }
        Ok(worst)
    }));
    out.push(run_check("scaled wilkinson GECP growth is 1", 1e-12, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            worst = worst.max((growth_factor(&models::scaled_wilkinson(n)?, PivotStrategy::Complete)? - 1.0).abs());
        }
        Ok(worst)
    }));
    out.push(run_check("b3 growth pair (1, 2)", 1e-12, || pair_deviation(&models::b3(), 1.0, 2.0)));
    out.push(run_check("cryer growth pair (2.25, 2.25)", 1e-12, || pair_deviation(&models::cryer_c(), 2.25, 2.25)));
    out.push(run_check("q3 growth pair (3, sqrt 3)", 1e-12, || pair_deviation(&models::q3(), 3.0, 3f64.sqrt())));
    out.push(run_check("q4 growth pair (5.5, sqrt 11 / 2)", 1e-12, || {
        pair_deviation(&models::q4(), 5.5, 11f64.sqrt() / 2.0)
    }));
    out.push(run_check("closed-form orthogonal factor matches QR of L_n", 1e-10, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            worst = worst.max(qn_oracle_deviation(n, &qn(n)?)?);
        }
        Ok(worst)
    }));
    out.push(run_check("closed-form intermediates match GENP replay", 1e-11, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            worst = worst.max(qn_intermediate_deviation(n, &qn(n)?)?);
        }
        Ok(worst)
    }));
    out.push(run_check("largest intermediate entry is sqrt(2 alpha_(n-1))", 1e-10, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            worst = worst.max(qn_max_pivot_deviation(n, &qn(n)?)?);
        }
        Ok(worst)
    }));
    out.push(run_check("path sums equal triangular inverse", 1e-12, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi.min(12) {
            let l = models::wilkinson_l(n)?;
            let a = models::gamma_by_inverse(&l)?;
            let b = models::gamma_by_paths(&l)?;
            worst = worst.max(a.as_matrix().max_abs_diff(b.as_matrix()));
        }
        Ok(worst)
    }));
    out.push(run_check("worst growth given L_n is 2^(n-1)", 1e-12, || {
        let mut worst = 0.0_f64;
        for n in lo..=hi {
            let want = (n as f64 - 1.0).exp2();
            worst = worst.max((models::worst_growth_given_l(&models::wilkinson_l(n)?)? - want).abs() / want);
        }
        Ok(worst)
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(gepp: f64, gecp: f64) -> GrowthPair {
        GrowthPair { gepp, gecp }
    }

    #[test]
    fn summary_small_cases() {
        let s = summarize(&[pair(1.0, 1.0)], 0.05).unwrap();
        assert_eq!((s.p_less, s.p_equal, s.p_greater), (0.0, 1.0, 0.0));
        let s = summarize(&[pair(1.0, 2.0)], 0.05).unwrap();
        assert_eq!(s.p_less, 1.0);
        let s = summarize(&[pair(3.0, 1.0), pair(1.0, 1.04), pair(1.0, 3.0), pair(2.0, 2.0)], 0.05).unwrap();
        assert_eq!((s.p_less, s.p_equal, s.p_greater), (0.25, 0.5, 0.25));
        assert_eq!(s.gepp.median, 1.5);
        assert!(summarize(&[], 0.05).is_err());
    }

    #[test]
    fn moments_use_sample_deviation() {
        let m = Moments::of(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.mean, 2.5);
        assert_eq!(m.median, 2.5);
        assert!((m.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(Moments::of(&[7.0]).unwrap().std, 0.0);
    }

    #[test]
    fn histogram_degenerate_and_mass() {
        let h = histogram2d(&[pair(1.0, 1.0); 5], 512, None).unwrap();
        assert_eq!(h.mass, vec![1.0]);
        let pairs: Vec<_> = (0..1000).map(|i| pair(1.0 + i as f64 / 100.0, 1.0 + (i % 7) as f64)).collect();
        let h = histogram2d(&pairs, 64, None).unwrap();
        assert!((h.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(h.gepp_axis.bins, 64);
        assert!(histogram2d(&[], 8, None).is_err());
    }

    #[test]
    fn column_deviation_is_relative() {
        let a = Matrix::from_rows(&[[1.0, 100.0], [0.0, 0.0]]).unwrap();
        let b = Matrix::from_rows(&[[1.0, 101.0], [0.0, 0.0]]).unwrap();
        assert!((column_relative_deviation(&a, &b) - 1.0 / 101.0).abs() < 1e-15);
    }

    #[test]
    fn tiny_identity_neighborhood() {
        let rng = RngStream::new(1, 0);
        let r = neighborhood_study(&Matrix::identity(4), 1e-6, 50, StepKind::Gaussian, &[1.0], &[1.0], &rng).unwrap();
        assert_eq!(r.gepp_anchors[0].within_fine, 1.0);
        assert_eq!(r.gecp_anchors[0].within_fine, 1.0);
    }

    #[test]
    fn zero_eps_is_deterministic() {
        let rng = RngStream::new(1, 0);
        let s = exponential_model_neighbor_stats(ExpModel::An, 5, 0.0, 10, &rng).unwrap();
        assert_eq!(s.base_gecp, 2.0);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.mean, 2.0 - 16.0);
    }
}
