//! Stochastic hill climbing over matrices for growth-factor objectives,
//! with multi-start and a shrinking-step refinement stage.

use serde::{Deserialize, Serialize};

use crate::elimination::{cp_transform, growth_factor, PivotStrategy};
use crate::error::{Error, Result};
use crate::linalg::{orthogonal_factor, Matrix};
use crate::parallel::map_indexed;
use crate::randgen::{gaussian_step, haar_orthogonal, orthogonal_step_raw, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    GecpMinusGepp,
    GeppMinusGecp,
    Gepp,
    Gecp,
}

impl Objective {
    pub fn eval(self, a: &Matrix) -> Result<f64> {
        let gepp = || growth_factor(a, PivotStrategy::Partial);
        let gecp = || growth_factor(a, PivotStrategy::Complete);
        Ok(match self {
            Objective::GecpMinusGepp => gecp()? - gepp()?,
            Objective::GeppMinusGecp => gepp()? - gecp()?,
            Objective::Gepp => gepp()?,
            Objective::Gecp => gecp()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    /// Left multiplication by a Givens product with angles in the `eps`-ball.
    Orthogonal,
    /// Additive `(eps/√n) G`.
    Gaussian,
}

pub const DEFAULT_TOL: f64 = 100.0 * f64::EPSILON;
pub const DEFAULT_MAX_ACCEPTED: usize = 1_000_000;
pub const REORTHOGONALIZE_EVERY: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchConfig {
    pub eps: f64,
    /// Consecutive rejected proposals before stopping.
    pub max_failures: usize,
    pub tol: f64,
    pub step: StepKind,
    pub max_accepted: usize,
    /// Keep every accepted matrix in the path, not just the endpoint.
    pub keep_states: bool,
}

impl SearchConfig {
    pub fn new(eps: f64, max_failures: usize, step: StepKind) -> Self {
        Self {
            eps,
            max_failures,
            tol: DEFAULT_TOL,
            step,
            max_accepted: DEFAULT_MAX_ACCEPTED,
            keep_states: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {}", self.eps)));
        }
        if self.max_failures == 0 {
            return Err(Error::InvalidArgument("failure budget must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidArgument(format!("tol must be nonnegative, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Default refinement: `eps = 1e-2, .., 1e-10` with 1000 failures each.
pub fn default_schedule() -> Vec<(f64, usize)> {
    (2..=10).map(|e| (10f64.powi(-e), 1000)).collect()
}

#[derive(Debug, Clone)]
pub struct SearchPath {
    /// Objective at the start and after each accepted step.
    pub values: Vec<f64>,
    pub endpoint: Matrix,
    /// Accepted matrices, including the start, when requested.
    pub states: Option<Vec<Matrix>>,
    pub accept_count: usize,
    pub reject_total: usize,
}

impl SearchPath {
    pub fn start_value(&self) -> f64 {
        self.values[0]
    }

    pub fn end_value(&self) -> f64 {
        *self.values.last().expect("path holds the start")
    }

    fn extend(&mut self, next: SearchPath) {
        self.values.extend_from_slice(&next.values[1..]);
        if let (Some(s), Some(mut t)) = (self.states.as_mut(), next.states) {
            t.remove(0);
            s.extend(t);
        }
        self.endpoint = next.endpoint;
        self.accept_count += next.accept_count;
        self.reject_total += next.reject_total;
    }
}

fn propose(a: &Matrix, cfg: &SearchConfig, rng: &mut RngStream) -> Result<Matrix> {
    match cfg.step {
        StepKind::Orthogonal => orthogonal_step_raw(a, cfg.eps, rng),
        StepKind::Gaussian => gaussian_step(a, cfg.eps, rng),
    }
}

/// Hill climbing: accept a proposal iff it beats the current value by more
/// than `tol`; stop after `max_failures` consecutive rejections.
pub fn max_search(f: Objective, a0: &Matrix, cfg: &SearchConfig, rng: &mut RngStream) -> Result<SearchPath> {
    cfg.validate()?;
    let n = a0.order()?;
    let mut cur = a0.clone();
    let mut fcur = f.eval(&cur)?;
    let reorthogonalize =
        cfg.step == StepKind::Orthogonal && a0.orthogonality_defect() <= 1e-10 * n as f64;
    let mut path = SearchPath {
        values: vec![fcur],
        endpoint: cur.clone(),
        states: cfg.keep_states.then(|| vec![cur.clone()]),
        accept_count: 0,
        reject_total: 0,
    };
    let mut failures = 0;
    while failures < cfg.max_failures && path.accept_count < cfg.max_accepted {
        let cand = propose(&cur, cfg, rng)?;
        match f.eval(&cand) {
            Ok(v) if v > fcur + cfg.tol => {
                cur = cand;
                fcur = v;
                failures = 0;
                path.accept_count += 1;
                if reorthogonalize && path.accept_count.is_multiple_of(REORTHOGONALIZE_EVERY) {
                    if let Ok(q) = orthogonal_factor(&cur) {
                        cur = q;
                    }
                }
                path.values.push(fcur);
                if let Some(s) = path.states.as_mut() {
                    s.push(cur.clone());
                }
            }
            _ => {
                failures += 1;
                path.reject_total += 1;
            }
        }
    }
    path.endpoint = cur;
    Ok(path)
}

#[derive(Debug, Clone)]
pub struct MultiStartResult {
    pub start_values: Vec<f64>,
    pub endpoint_values: Vec<f64>,
    pub winner: usize,
    /// Winning start's path followed by the refinement runs.
    pub path: SearchPath,
}

/// Runs [`max_search`] from `starts` Haar samples (each put through
/// [`cp_transform`]) in parallel, then refines the best endpoint with the
/// `(eps, max_failures)` schedule. Start `i` draws from `rng.derive(i)`.
pub fn multi_start_search(
    f: Objective,
    n: usize,
    starts: usize,
    cfg: &SearchConfig,
    schedule: &[(f64, usize)],
    rng: &RngStream,
) -> Result<MultiStartResult> {
    if starts == 0 {
        return Err(Error::InvalidArgument("at least one start is required".into()));
    }
    cfg.validate()?;
    let runs = map_indexed(starts, |i| -> Result<SearchPath> {
        let mut r = rng.derive(i as u64);
        let a0 = cp_transform(&haar_orthogonal(n, &mut r)?)?;
        max_search(f, &a0, cfg, &mut r)
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let mut winner = 0;
    for (i, p) in runs.iter().enumerate() {
        if p.end_value() > runs[winner].end_value() {
            winner = i;
        }
    }
    let start_values = runs.iter().map(SearchPath::start_value).collect();
    let endpoint_values = runs.iter().map(SearchPath::end_value).collect();
    let mut path = runs.into_iter().nth(winner).expect("winner exists");
    for (s, &(eps, m)) in schedule.iter().enumerate() {
        let stage = SearchConfig { eps, max_failures: m, ..cfg.clone() };
        let mut r = rng.derive((starts + s) as u64);
        let next = max_search(f, &path.endpoint, &stage, &mut r)?;
        path.extend(next);
    }
    Ok(MultiStartResult { start_values, endpoint_values, winner, path })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Search over orthogonal matrices.
    Orth,
    /// Search over general nonsingular matrices.
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Protocol {
    pub starts: usize,
    pub eps: f64,
    pub max_failures: usize,
    pub schedule: Vec<(f64, usize)>,
}

/// Lower-bound estimate of `max (ρ^GECP - ρ^GEPP)` over the ensemble.
pub fn estimate_cn(n: usize, ensemble: Ensemble, protocol: &Protocol, rng: &RngStream) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("order must be at least 2, got {n}")));
    }
    let step = match ensemble {
        Ensemble::Orth => StepKind::Orthogonal,
        Ensemble::General => StepKind::Gaussian,
    };
    let cfg = SearchConfig::new(protocol.eps, protocol.max_failures, step);
    let res = multi_start_search(Objective::GecpMinusGepp, n, protocol.starts, &cfg, &protocol.schedule, rng)?;
    Ok(res.path.end_value())
}
