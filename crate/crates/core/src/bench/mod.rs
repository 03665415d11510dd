//! Experiment harness: instance generation, paired solver runs over seeds,
//! CSV traces and threshold summaries.

pub mod instance;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::schedule::{ProblemConstants, ScheduleVariant};
use crate::solver::{run_solver, OfwParams, Problem, RunMeta, RunTrace, SolverConfig, SolverKind, StopReason, TraceRow};

pub use instance::{gen_instance, GeneratedRegion, Instance, InstanceSpec, RegionSpec};

/// Environment variable that forces single-threaded execution when set to 1.
pub const DETERMINISTIC_ENV: &str = "LAZY_SLIDING_DETERMINISTIC";

/// Where an experiment's instance comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSource {
    File { path: PathBuf },
    Generate(InstanceSpec),
}

impl InstanceSource {
    pub fn load(&self) -> Result<Instance> {
        match self {
            InstanceSource::File { path } => Instance::read(path),
            InstanceSource::Generate(spec) => gen_instance(spec),
        }
    }
}

/// One solver column of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverEntry {
    pub label: String,
    pub solver: SolverKind,
    /// Defaults to the horizon-free schedule matching the solver.
    #[serde(default)]
    pub schedule: Option<ScheduleVariant>,
    #[serde(default)]
    pub alpha: Option<f64>,
    /// Fixed mini-batch size.
    #[serde(default)]
    pub batch: Option<u64>,
    #[serde(default)]
    pub cache_capacity: Option<usize>,
    #[serde(default)]
    pub ofw: Option<OfwParams>,
    #[serde(default)]
    pub restart_phases: Option<u32>,
}

/// Per-run limits shared by every solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Budgets {
    pub outer_limit: usize,
    #[serde(default)]
    pub time_limit: Option<f64>,
    #[serde(default)]
    pub sfo_limit: Option<u64>,
    /// Stop a run as soon as `f(y_k)` reaches this value.
    #[serde(default)]
    pub target_value: Option<f64>,
}

fn default_thresholds() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub instance: InstanceSource,
    #[serde(default)]
    pub solvers: Vec<SolverEntry>,
    pub seeds: Vec<u64>,
    pub budgets: Budgets,
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<f64>,
    /// Problem constants; estimated from the instance when absent.
    #[serde(default)]
    pub constants: Option<ProblemConstants>,
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: Self = serde_json::from_str(&text)?;
        // instance files are relative to the config file
        if let InstanceSource::File { path: inst } = &mut cfg.instance {
            if inst.is_relative() {
                if let Some(dir) = path.parent() {
                    *inst = dir.join(&*inst);
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budgets.outer_limit == 0 {
            return Err(Error::config("budgets.outer_limit must be >= 1"));
        }
        let mut labels: Vec<&str> = self.solvers.iter().map(|s| s.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::config("solver labels must be unique"));
        }
        if self.thresholds.iter().any(|t| !t.is_finite()) {
            return Err(Error::config("thresholds must be finite"));
        }
        Ok(())
    }

    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Smoothness, diameter and variance measured on an instance.
///
/// The variance is taken at the region's default start point.
pub fn estimate_constants(inst: &Instance) -> Result<ProblemConstants> {
    let l = inst.objective.estimate_lipschitz()?;
    let x0 = inst.region.default_start()?;
    let mut r = rng::seeded(inst.spec.seed ^ 0x5eed);
    let s2 = inst.objective.estimate_variance(&x0, 2000, &mut r)?;
    Ok(ProblemConstants::new(inst.region.diameter())
        .with_lipschitz(l)
        .with_variance(s2))
}

fn default_schedule(kind: SolverKind, outer_limit: usize) -> Result<ScheduleVariant> {
    Ok(match kind {
        SolverKind::Calsgd | SolverKind::Scgs | SolverKind::Ofw => ScheduleVariant::SmoothStochastic,
        SolverKind::Calgd => ScheduleVariant::SmoothDeterministic,
        SolverKind::CalsgdNonsmooth => ScheduleVariant::NonsmoothStochastic { horizon: outer_limit },
        other => {
            return Err(Error::config(format!(
                "solver {} needs an explicit schedule",
                other.name()
            )))
        }
    })
}

/// Builds the solver configuration for one (entry, seed) pair.
pub fn solver_config(
    exp: &ExperimentConfig,
    entry: &SolverEntry,
    constants: &ProblemConstants,
    seed: u64,
) -> Result<SolverConfig> {
    let schedule = match entry.schedule {
        Some(s) => s,
        None => default_schedule(entry.solver, exp.budgets.outer_limit)?,
    };
    let mut constants = constants.clone();
    if let Some(a) = entry.alpha {
        constants.alpha = a;
    }
    let mut cfg = SolverConfig::new(entry.solver, schedule, constants, exp.budgets.outer_limit).with_seed(seed);
    cfg.time_limit = exp.budgets.time_limit;
    cfg.sfo_limit = exp.budgets.sfo_limit;
    cfg.target_value = exp.budgets.target_value;
    cfg.batch_override = entry.batch;
    if let Some(c) = entry.cache_capacity {
        cfg.cache_capacity = c;
    }
    if let Some(o) = entry.ofw {
        cfg.ofw = o;
    }
    cfg.restart_phases = entry.restart_phases;
    cfg.validate()?;
    Ok(cfg)
}

/// Manifest entry for one finished run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub label: String,
    pub seed: u64,
    pub file: String,
    pub stop: StopReason,
    pub budget_error: Option<String>,
    pub meta: RunMeta,
}

/// Index of an output directory, written next to the traces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub config_hash: String,
    pub thresholds: Vec<f64>,
    pub labels: Vec<String>,
    pub runs: Vec<RunRecord>,
}

/// Medians over the runs that reached one threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdStats {
    pub threshold: f64,
    pub hits: usize,
    pub median_iterations: Option<f64>,
    pub median_sfo_calls: Option<f64>,
    pub median_exact_lmo_calls: Option<f64>,
    pub median_wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub label: String,
    pub runs: usize,
    pub budget_errors: usize,
    pub thresholds: Vec<ThresholdStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub name: String,
    pub config_hash: String,
    pub runs: usize,
    pub budget_errors: usize,
    pub solvers: Vec<SolverSummary>,
}

impl ExperimentSummary {
    pub fn solver(&self, label: &str) -> Option<&SolverSummary> {
        self.solvers.iter().find(|s| s.label == label)
    }
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    })
}

/// Threshold table for one solver's runs.
pub fn summarize_runs(label: &str, runs: &[&[TraceRow]], budget_errors: usize, thresholds: &[f64]) -> SolverSummary {
    let stats = thresholds
        .iter()
        .map(|&t| {
            let hits: Vec<&TraceRow> = runs.iter().filter_map(|rows| crate::solver::first_hit(rows, t)).collect();
            let col = |f: fn(&TraceRow) -> f64| median(&mut hits.iter().map(|r| f(r)).collect::<Vec<_>>());
            ThresholdStats {
                threshold: t,
                hits: hits.len(),
                median_iterations: col(|r| r.outer_k as f64),
                median_sfo_calls: col(|r| r.sfo_calls as f64),
                median_exact_lmo_calls: col(|r| r.exact_lmo_calls as f64),
                median_wall_ms: col(|r| r.wall_ms),
            }
        })
        .collect();
    SolverSummary {
        label: label.to_string(),
        runs: runs.len(),
        budget_errors,
        thresholds: stats,
    }
}

fn summarize_manifest(manifest: &Manifest, traces: &[Vec<TraceRow>]) -> ExperimentSummary {
    let solvers = manifest
        .labels
        .iter()
        .map(|label| {
            let idx: Vec<usize> = (0..manifest.runs.len()).filter(|&i| &manifest.runs[i].label == label).collect();
            let rows: Vec<&[TraceRow]> = idx.iter().map(|&i| traces[i].as_slice()).collect();
            let errors = idx.iter().filter(|&&i| manifest.runs[i].budget_error.is_some()).count();
            summarize_runs(label, &rows, errors, &manifest.thresholds)
        })
        .collect();
    ExperimentSummary {
        name: manifest.name.clone(),
        config_hash: manifest.config_hash.clone(),
        runs: manifest.runs.len(),
        budget_errors: manifest.runs.iter().filter(|r| r.budget_error.is_some()).count(),
        solvers,
    }
}

/// Worker count honoring the deterministic override.
pub fn effective_jobs(requested: Option<usize>) -> usize {
    if std::env::var(DETERMINISTIC_ENV).map(|v| v == "1").unwrap_or(false) {
        return 1;
    }
    requested
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Traces of one experiment, in (solver, seed) order.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub manifest: Manifest,
    pub traces: Vec<RunTrace>,
    pub summary: ExperimentSummary,
}

/// Runs every (solver, seed) pair on a shared instance.
///
/// Budget errors are recorded per run and do not stop the experiment;
/// configuration errors abort it. When `out` is given, each trace is written
/// as `<label>_seed<seed>.csv` alongside `manifest.json` and `summary.json`.
pub fn run_experiment(exp: &ExperimentConfig, out: Option<&Path>, jobs: Option<usize>) -> Result<ExperimentOutput> {
    exp.validate()?;
    let config_hash = exp.hash();
    let labels: Vec<String> = exp.solvers.iter().map(|s| s.label.clone()).collect();
    let mut jobs_list = Vec::new();
    let mut traces = Vec::new();
    let mut records = Vec::new();
    if !exp.solvers.is_empty() && !exp.seeds.is_empty() {
        let inst = exp.instance.load()?;
        let constants = match &exp.constants {
            Some(c) => c.clone(),
            None => estimate_constants(&inst)?,
        };
        for entry in &exp.solvers {
            for &seed in &exp.seeds {
                jobs_list.push((entry, seed, solver_config(exp, entry, &constants, seed)?));
            }
        }
        let problem = Problem::LeastSquares(inst.objective.clone());
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(effective_jobs(jobs))
            .build()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?;
        let results: Vec<Result<_>> = pool.install(|| {
            jobs_list
                .par_iter()
                .map(|(_, _, cfg)| run_solver(cfg, &problem, &inst.region))
                .collect()
        });
        // single collector: results are written in job order
        for ((entry, seed, _), res) in jobs_list.iter().zip(results) {
            let res = res?;
            let file = format!("{}_seed{}.csv", entry.label, seed);
            records.push(RunRecord {
                label: entry.label.clone(),
                seed: *seed,
                file,
                stop: res.stop,
                budget_error: res.budget.as_ref().map(|b| {
                    format!("inner budget exhausted after {} iterations (phi {:e}, eta {:e})", b.iterations, b.phi, b.eta)
                }),
                meta: res.trace.meta.clone(),
            });
            traces.push(res.trace);
        }
    }
    let manifest = Manifest {
        name: exp.name.clone(),
        config_hash,
        thresholds: exp.thresholds.clone(),
        labels,
        runs: records,
    };
    let rows: Vec<Vec<TraceRow>> = traces.iter().map(|t| t.rows.clone()).collect();
    let summary = summarize_manifest(&manifest, &rows);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (rec, trace) in manifest.runs.iter().zip(&traces) {
            let path = dir.join(&rec.file);
            std::fs::write(&path, trace.to_csv_string()).map_err(|e| Error::io(&path, e))?;
        }
        write_json(&dir.join("manifest.json"), &manifest)?;
        write_json(&dir.join("summary.json"), &summary)?;
    }
    Ok(ExperimentOutput {
        manifest,
        traces,
        summary,
    })
}

/// Recomputes `summary.json` from the traces listed in `manifest.json`.
pub fn summarize_dir(dir: &Path) -> Result<ExperimentSummary> {
    let path = dir.join("manifest.json");
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let manifest: Manifest = serde_json::from_str(&text)?;
    let mut traces = Vec::with_capacity(manifest.runs.len());
    for rec in &manifest.runs {
        let p = dir.join(&rec.file);
        let f = std::fs::File::open(&p).map_err(|e| Error::io(&p, e))?;
        traces.push(RunTrace::read_rows(std::io::BufReader::new(f))?);
    }
    let summary = summarize_manifest(&manifest, &traces);
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Parses `a..b` (half-open), `a..=b`, or a comma-separated list.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::config(format!("cannot parse seeds `{s}`"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..=") {
        let (a, b) = (num(a)?, num(b)?);
        return if a <= b { Ok((a..=b).collect()) } else { Err(bad()) };
    }
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        return if a < b { Ok((a..b).collect()) } else { Err(bad()) };
    }
    s.split(',').map(num).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_seeds("5,1").unwrap(), vec![5, 1]);
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0]), Some(2.5));
    }
}
