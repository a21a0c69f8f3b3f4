use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pivotgrowth::experiments::{
    self, exponential_model_neighbor_stats, growth_pairs, histogram2d, neighborhood_study, summarize,
    ExpModel, GrowthPair, SampleEnsemble,
};
use pivotgrowth::linalg::{format_f64, to_csv_string};
use pivotgrowth::models;
use pivotgrowth::randgen::RngStream;
use pivotgrowth::search::{default_schedule, multi_start_search, Ensemble, Objective, SearchConfig, StepKind};
use pivotgrowth::{Error, Result};

#[derive(Parser)]
#[command(name = "pivotgrowth", version, about = "Growth-factor experiments for pivoted Gaussian elimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum StepArg {
    Orthogonal,
    Gaussian,
}

impl From<StepArg> for StepKind {
    fn from(s: StepArg) -> Self {
        match s {
            StepArg::Orthogonal => StepKind::Orthogonal,
            StepArg::Gaussian => StepKind::Gaussian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    GecpMinusGepp,
    GeppMinusGecp,
    Gepp,
    Gecp,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::GecpMinusGepp => Objective::GecpMinusGepp,
            ObjectiveArg::GeppMinusGecp => Objective::GeppMinusGecp,
            ObjectiveArg::Gepp => Objective::Gepp,
            ObjectiveArg::Gecp => Objective::Gecp,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Growth pairs of random Haar or Ginibre matrices, with summary statistics.
    Sample {
        #[arg(long, value_enum, default_value = "haar")]
        ensemble: EnsembleArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = experiments::DEFAULT_PROPORTION_TOL)]
        tol: f64,
        /// Histogram grid size; 0 disables the histogram.
        #[arg(long, default_value_t = 0)]
        grid: usize,
        /// Where to write the dense histogram CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Growth pairs of single-step perturbations of a named matrix.
    Neighborhood {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, value_enum, default_value = "gaussian")]
        step: StepArg,
        /// Comma-separated GEPP values to report concentration around.
        #[arg(long, value_delimiter = ',')]
        anchors_gepp: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        anchors_gecp: Vec<f64>,
        #[arg(long, default_value_t = experiments::DEFAULT_PROPORTION_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// GECP growth of Q_n or A_n minus GEPP growth of its Gaussian neighbors.
    Table4 {
        #[arg(long, value_enum, default_value = "qn")]
        model: ModelArg,
        /// Comma-separated orders.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Multi-start hill climbing for growth-factor objectives.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "orth")]
        ensemble: EnsembleSearchArg,
        #[arg(long, value_enum, default_value = "gecp-minus-gepp")]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 15)]
        starts: usize,
        #[arg(long, default_value_t = 1e-1)]
        eps: f64,
        /// Consecutive failures before a run stops.
        #[arg(long = "M", default_value_t = 10_000)]
        max_failures: usize,
        /// `default`, `none`, or comma-separated `eps:M` stages.
        #[arg(long, default_value = "default")]
        schedule: String,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a named matrix.
    Model {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the exact-value check suite; exits nonzero on any failure.
    Verify {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 25)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    Haar,
    Ginibre,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleSearchArg {
    Orth,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Qn,
    An,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn pairs_csv(pairs: &[GrowthPair]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["gepp", "gecp"])?;
    for p in pairs {
        w.write_record([format_f64(p.gepp), format_f64(p.gecp)])?;
    }
    w.flush()?;
    Ok(String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).expect("ascii"))
}

fn parse_schedule(s: &str) -> Result<Vec<(f64, usize)>> {
    match s {
        "default" => Ok(default_schedule()),
        "none" | "" => Ok(Vec::new()),
        _ => s
            .split(',')
            .map(|stage| {
                let (e, m) = stage
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("schedule stage {stage:?} is not eps:M")))?;
                let e = e.trim().parse::<f64>().map_err(|x| Error::Parse(format!("{e:?}: {x}")))?;
                let m = m.trim().parse::<usize>().map_err(|x| Error::Parse(format!("{m:?}: {x}")))?;
                Ok((e, m))
            })
            .collect(),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample { ensemble, n, count, tol, grid, histogram, common } => {
            let ens = match ensemble {
                EnsembleArg::Haar => SampleEnsemble::Haar,
                EnsembleArg::Ginibre => SampleEnsemble::Ginibre,
            };
            let rng = RngStream::new(common.seed, common.stream);
            let sample = growth_pairs(ens, n, count, &rng)?;
            let stats = summarize(&sample.pairs, tol)?;
            let mut hist_meta = serde_json::Value::Null;
            if grid > 0 {
                let h = histogram2d(&sample.pairs, grid, None)?;
                hist_meta = json!({ "geppAxis": h.gepp_axis, "gecpAxis": h.gecp_axis, "bandMass": h.band_mass(tol) });
                if let Some(p) = &histogram {
                    fs::write(p, to_csv_string(&h.to_matrix()?))?;
                }
            }
            match common.format {
                Format::Csv => emit(&common.out, &pairs_csv(&sample.pairs)?)?,
                Format::Json => emit(
                    &common.out,
                    &to_json(&json!({
                        "ensemble": ens, "n": n, "count": count, "seed": common.seed,
                        "stream": common.stream, "failures": sample.failures,
                        "stats": stats, "histogram": hist_meta,
                    })),
                )?,
            }
            Ok(true)
        }
        Command::Neighborhood { model, n, eps, count, step, anchors_gepp, anchors_gecp, tol, common } => {
            let a0 = models::by_name(&model, n)?;
            let rng = RngStream::new(common.seed, common.stream);
            let r = neighborhood_study(&a0, eps, count, step.into(), &anchors_gepp, &anchors_gecp, &rng)?;
            match common.format {
                Format::Csv => emit(&common.out, &pairs_csv(&r.sample.pairs)?)?,
                Format::Json => emit(
                    &common.out,
                    &to_json(&json!({
                        "model": model, "n": a0.rows(), "eps": eps, "count": count,
                        "step": StepKind::from(step), "seed": common.seed, "stream": common.stream,
                        "failures": r.sample.failures, "stats": summarize(&r.sample.pairs, tol)?,
                        "geppAnchors": r.gepp_anchors, "gecpAnchors": r.gecp_anchors,
                    })),
                )?,
            }
            Ok(true)
        }
        Command::Table4 { model, n, eps, count, common } => {
            let m = match model {
                ModelArg::Qn => ExpModel::Qn,
                ModelArg::An => ExpModel::An,
            };
            let rng = RngStream::new(common.seed, common.stream);
            let rows = n
                .iter()
                .map(|&k| exponential_model_neighbor_stats(m, k, eps, count, &rng))
                .collect::<Result<Vec<_>>>()?;
            match common.format {
                Format::Json => emit(&common.out, &to_json(&serde_json::to_value(&rows).expect("serializable")))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "median", "mean", "std", "pZero", "count", "failures"])?;
                    for r in &rows {
                        w.write_record([
                            r.n.to_string(),
                            format_f64(r.median),
                            format_f64(r.mean),
                            format_f64(r.std),
                            format_f64(r.p_zero),
                            r.count.to_string(),
                            r.failures.to_string(),
                        ])?;
                    }
                    w.flush()?;
                    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                    emit(&common.out, &String::from_utf8(bytes).expect("ascii"))?;
                }
            }
            Ok(true)
        }
        Command::Search { n, ensemble, objective, starts, eps, max_failures, schedule, common } => {
            let (ens, step) = match ensemble {
                EnsembleSearchArg::Orth => (Ensemble::Orth, StepKind::Orthogonal),
                EnsembleSearchArg::General => (Ensemble::General, StepKind::Gaussian),
            };
            let schedule = parse_schedule(&schedule)?;
            let cfg = SearchConfig::new(eps, max_failures, step);
            let rng = RngStream::new(common.seed, common.stream);
            let f = Objective::from(objective);
            let res = multi_start_search(f, n, starts, &cfg, &schedule, &rng)?;
            emit(
                &common.out,
                &to_json(&json!({
                    "n": n, "ensemble": ens, "objective": f, "starts": starts, "config": cfg,
                    "schedule": schedule, "seed": common.seed, "stream": common.stream,
                    "startValues": res.start_values, "endpointValues": res.endpoint_values,
                    "winner": res.winner, "values": res.path.values,
                    "acceptCount": res.path.accept_count, "rejectTotal": res.path.reject_total,
                    "endValue": res.path.end_value(), "endpoint": to_csv_string(&res.path.endpoint),
                })),
            )?;
            Ok(true)
        }
        Command::Model { name, n, common } => {
            let a = models::by_name(&name, n)?;
            match common.format {
                Format::Csv => emit(&common.out, &to_csv_string(&a))?,
                Format::Json => emit(&common.out, &to_json(&json!({ "name": name, "rows": a.to_rows() })))?,
            }
            Ok(true)
        }
        Command::Verify { n_min, n_max } => {
            let checks = experiments::verify_suite(n_min..=n_max);
            let mut ok = true;
            for c in &checks {
                ok &= c.passed;
                println!(
                    "{} {} (deviation {:.3e}, tolerance {:.1e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.deviation,
                    c.tolerance
                );
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
