//! Accelerated outer loops and the two baselines.
//!
//! Every solver emits one [`TraceRow`] per outer iteration. Step functions
//! are exposed for callers that want to drive the loop themselves.

pub mod trace;

use std::time::Instant;

use rand::RngCore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{check_dim, BudgetExhausted, Error, Result};
use crate::lcg::{iteration_bound, lcg_solve, line_search_quadratic, LcgResult, Subproblem};
use crate::linalg::{dot_diff, lerp, lerp_into};
use crate::objective::{Objective, SmoothedSaddle, StochasticObjective};
use crate::oracle::{VertexCache, DEFAULT_CACHE_CAPACITY};
use crate::region::Region;
use crate::rng;
use crate::schedule::{schedule_eval_capped, ProblemConstants, ScheduleVariant, StepParams, DEFAULT_BATCH_CAP};

pub use trace::{first_hit, RunMeta, RunTrace, TraceRow, CSV_HEADER};

/// Which outer method to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    /// Stochastic accelerated lazy sliding.
    Calsgd,
    /// Deterministic accelerated lazy sliding.
    Calgd,
    /// Deterministic restarts for strongly convex problems.
    CalgdRestart,
    /// Stochastic restarts for strongly convex problems.
    CalsgdRestart,
    /// Deterministic sliding on a smoothed saddle objective.
    CalgdSaddle,
    /// Stochastic subgradient sliding with constant steps.
    CalsgdNonsmooth,
    /// Same outer loop as CALSGD with a classical Frank-Wolfe inner solver.
    Scgs,
    /// Online Frank-Wolfe with an averaged gradient.
    Ofw,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::Calsgd => "calsgd",
            SolverKind::Calgd => "calgd",
            SolverKind::CalgdRestart => "calgd_restart",
            SolverKind::CalsgdRestart => "calsgd_restart",
            SolverKind::CalgdSaddle => "calgd_saddle",
            SolverKind::CalsgdNonsmooth => "calsgd_nonsmooth",
            SolverKind::Scgs => "scgs",
            SolverKind::Ofw => "ofw",
        }
    }

    /// Whether `schedule` fits this solver.
    pub fn accepts(&self, schedule: &ScheduleVariant) -> bool {
        use ScheduleVariant as S;
        match self {
            SolverKind::Calsgd => matches!(schedule, S::SmoothStochastic | S::SmoothStochasticFixedN { .. }),
            SolverKind::Calgd => matches!(schedule, S::SmoothDeterministic | S::SmoothDeterministicFixedN { .. }),
            SolverKind::CalgdRestart => matches!(schedule, S::StronglyConvexDetPhase { .. }),
            SolverKind::CalsgdRestart => matches!(schedule, S::StronglyConvexStochPhase { .. }),
            SolverKind::CalgdSaddle => schedule.is_saddle(),
            SolverKind::CalsgdNonsmooth => matches!(schedule, S::NonsmoothStochastic { .. }),
            SolverKind::Scgs => matches!(
                schedule,
                S::SmoothStochastic
                    | S::SmoothStochasticFixedN { .. }
                    | S::SmoothDeterministic
                    | S::SmoothDeterministicFixedN { .. }
            ),
            SolverKind::Ofw => true,
        }
    }
}

/// Online Frank-Wolfe constants: `rho_t = t^-rho_exponent`,
/// `gamma_t = t^-gamma_exponent`, `batch` samples per step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OfwParams {
    pub rho_exponent: f64,
    pub gamma_exponent: f64,
    pub batch: u64,
}

impl Default for OfwParams {
    fn default() -> Self {
        OfwParams {
            rho_exponent: 2.0 / 3.0,
            gamma_exponent: 0.75,
            batch: 1,
        }
    }
}

fn default_cache_capacity() -> usize {
    DEFAULT_CACHE_CAPACITY
}

fn default_batch_cap() -> u64 {
    DEFAULT_BATCH_CAP
}

/// Everything needed to run one solver on one instance with one seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub solver: SolverKind,
    pub schedule: ScheduleVariant,
    pub constants: ProblemConstants,
    /// Starting point; the region's default vertex when absent.
    #[serde(default)]
    pub x0: Option<Vec<f64>>,
    /// Outer iterations (per phase for the restart solvers).
    pub outer_limit: usize,
    #[serde(default)]
    pub seed: u64,
    /// Wall-clock budget in seconds, checked between outer iterations.
    #[serde(default)]
    pub time_limit: Option<f64>,
    #[serde(default = "default_cache_capacity")]
    pub cache_capacity: usize,
    #[serde(default = "default_batch_cap")]
    pub batch_cap: u64,
    /// Fixed mini-batch size replacing the schedule's `B_k`.
    #[serde(default)]
    pub batch_override: Option<u64>,
    /// Stop once this many stochastic gradients have been drawn.
    #[serde(default)]
    pub sfo_limit: Option<u64>,
    /// Stop once `f(y_k) <= target_value`.
    #[serde(default)]
    pub target_value: Option<f64>,
    /// Audit each outer certificate with one extra exact LMO call.
    #[serde(default)]
    pub audit: bool,
    #[serde(default)]
    pub ofw: OfwParams,
    /// Number of phases for the restart solvers.
    #[serde(default)]
    pub restart_phases: Option<u32>,
}

impl SolverConfig {
    pub fn new(solver: SolverKind, schedule: ScheduleVariant, constants: ProblemConstants, outer_limit: usize) -> Self {
        SolverConfig {
            solver,
            schedule,
            constants,
            x0: None,
            outer_limit,
            seed: 0,
            time_limit: None,
            cache_capacity: DEFAULT_CACHE_CAPACITY,
            batch_cap: DEFAULT_BATCH_CAP,
            batch_override: None,
            sfo_limit: None,
            target_value: None,
            audit: false,
            ofw: OfwParams::default(),
            restart_phases: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_x0(mut self, x0: Vec<f64>) -> Self {
        self.x0 = Some(x0);
        self
    }

    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if !self.solver.accepts(&self.schedule) {
            return Err(Error::config(format!(
                "solver {} does not accept schedule {}",
                self.solver.name(),
                self.schedule.name()
            )));
        }
        if self.outer_limit == 0 {
            return Err(Error::config("outer_limit must be >= 1"));
        }
        if let Some(t) = self.time_limit {
            if !(t > 0.0) {
                return Err(Error::config("time_limit must be > 0"));
            }
        }
        if self.batch_override == Some(0) || self.ofw.batch == 0 {
            return Err(Error::config("batch sizes must be >= 1"));
        }
        Ok(())
    }

    /// Hex SHA-256 of the JSON encoding.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Iterates of the accelerated outer loop.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    /// Completed outer iterations.
    pub k: usize,
    pub cache: VertexCache,
    pub sfo_calls: u64,
    pub fo_calls: u64,
}

impl SolverState {
    /// `x = y = z = x0`.
    pub fn new(x0: Vec<f64>, cache: VertexCache) -> Self {
        SolverState {
            y: x0.clone(),
            z: x0.clone(),
            x: x0,
            k: 0,
            cache,
            sfo_calls: 0,
            fo_calls: 0,
        }
    }
}

/// Inner solver used for the projection-like subproblem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerMethod {
    Lazy,
    FrankWolfe,
}

/// Result of one outer step.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub inner: LcgResult,
    /// Exact gap of the subproblem at the new `x`, when auditing.
    pub audit_gap: Option<f64>,
}

/// Classical Frank-Wolfe on the subproblem, stopped when the Wolfe gap is at
/// most `eta`. Every iteration is one exact LMO call.
pub fn frank_wolfe_inner(
    sub: &Subproblem,
    region: &Region,
    u1: &[f64],
    eta: f64,
    cache: &mut VertexCache,
    cap: Option<usize>,
) -> Result<LcgResult> {
    if !(eta > 0.0) {
        return Err(Error::domain(format!("frank-wolfe inner needs eta > 0, got {eta}")));
    }
    check_dim(region.dim(), u1.len())?;
    let start = cache.counters();
    let mut u = u1.to_vec();
    let mut gaps = Vec::new();
    let mut psi = Vec::new();
    let mut cap = cap;
    loop {
        let grad = sub.gradient(&u);
        let v = cache.exact_lmo(region, &grad)?;
        let gap = dot_diff(&grad, &u, &v.point);
        let limit = *cap.get_or_insert_with(|| {
            iteration_bound(gap.max(eta), sub.curvature(region.diameter()), eta, 1.0).saturating_mul(4)
        });
        gaps.push(gap);
        psi.push(sub.value(&u));
        if gap <= eta {
            let end = cache.counters();
            return Ok(LcgResult {
                point: u,
                cert_gap: gap,
                iterations: gaps.len(),
                weak_sep_calls: 0,
                exact_lmo_calls: end.exact_lmo_calls - start.exact_lmo_calls,
                cache_hits: 0,
                phi0: gaps[0],
                phi_trace: gaps,
                psi_trace: psi,
            });
        }
        if gaps.len() >= limit {
            return Err(Error::Budget(Box::new(BudgetExhausted {
                iterations: gaps.len(),
                phi: gap,
                eta,
                best: u,
            })));
        }
        let lambda = line_search_quadratic(sub, &u, &v.point);
        lerp_into(&mut u, &v.point, lambda);
    }
}

/// `z_k = (1 - gamma) y_{k-1} + gamma x_{k-1}`.
fn set_z(state: &mut SolverState, gamma: f64) {
    state.z = lerp(&state.y, &state.x, gamma);
}

/// Inner solve from `x_{k-1}` and the `y` update.
fn finish_step(
    state: &mut SolverState,
    region: &Region,
    params: &StepParams,
    alpha: f64,
    g: Vec<f64>,
    inner: InnerMethod,
    audit: bool,
) -> Result<StepReport> {
    let sub = Subproblem::new(g, state.x.clone(), params.beta)?;
    let result = match inner {
        InnerMethod::Lazy => lcg_solve(&sub, region, &state.x, alpha, params.eta, &mut state.cache, None)?,
        InnerMethod::FrankWolfe => frank_wolfe_inner(&sub, region, &state.x, params.eta, &mut state.cache, None)?,
    };
    let audit_gap = if audit {
        let grad = sub.gradient(&result.point);
        let v = state.cache.exact_lmo(region, &grad)?;
        Some(dot_diff(&grad, &result.point, &v.point))
    } else {
        None
    };
    state.x.clone_from(&result.point);
    lerp_into(&mut state.y, &state.x, params.gamma);
    state.k += 1;
    Ok(StepReport { inner: result, audit_gap })
}

/// Mean of `batch` stochastic gradients at `z` (sum, then one division).
pub fn minibatch_gradient(
    obj: &dyn StochasticObjective,
    z: &[f64],
    batch: u64,
    rng: &mut dyn RngCore,
) -> Result<Vec<f64>> {
    let mut g = obj.sample_gradient(z, rng)?;
    for _ in 1..batch {
        let s = obj.sample_gradient(z, rng)?;
        for (gi, si) in g.iter_mut().zip(&s) {
            *gi += si;
        }
    }
    let b = batch.max(1) as f64;
    g.iter_mut().for_each(|v| *v /= b);
    Ok(g)
}

/// One CALSGD iteration: mini-batch gradient at `z_k`, lazy inner solve.
pub fn calsgd_step(
    state: &mut SolverState,
    obj: &dyn StochasticObjective,
    region: &Region,
    params: &StepParams,
    alpha: f64,
    rng: &mut dyn RngCore,
) -> Result<StepReport> {
    set_z(state, params.gamma);
    let g = minibatch_gradient(obj, &state.z, params.batch, rng)?;
    state.sfo_calls += params.batch.max(1);
    finish_step(state, region, params, alpha, g, InnerMethod::Lazy, false)
}

/// One CALGD iteration: exact gradient at `z_k`, lazy inner solve.
pub fn calgd_step(
    state: &mut SolverState,
    obj: &dyn Objective,
    region: &Region,
    params: &StepParams,
    alpha: f64,
) -> Result<StepReport> {
    set_z(state, params.gamma);
    let g = obj.gradient(&state.z)?;
    state.fo_calls += 1;
    finish_step(state, region, params, alpha, g, InnerMethod::Lazy, false)
}

/// One smoothed saddle iteration with `tau = params.tau`.
pub fn saddle_step(
    state: &mut SolverState,
    obj: &SmoothedSaddle,
    region: &Region,
    params: &StepParams,
    alpha: f64,
) -> Result<StepReport> {
    set_z(state, params.gamma);
    let g = obj.smoothed(&state.z, params.tau)?.grad;
    state.fo_calls += 1;
    finish_step(state, region, params, alpha, g, InnerMethod::Lazy, false)
}

/// One non-smooth iteration: a single stochastic subgradient at `z_k`.
pub fn nonsmooth_step(
    state: &mut SolverState,
    obj: &dyn StochasticObjective,
    region: &Region,
    params: &StepParams,
    alpha: f64,
    rng: &mut dyn RngCore,
) -> Result<StepReport> {
    set_z(state, params.gamma);
    let g = obj.sample_gradient(&state.z, rng)?;
    state.sfo_calls += 1;
    finish_step(state, region, params, alpha, g, InnerMethod::Lazy, false)
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    IterationLimit,
    TimeLimit,
    SfoLimit,
    Target,
    Budget,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub trace: RunTrace,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Phase-end points of the restart solvers (`p_1, p_2, ...`).
    pub phase_points: Vec<Vec<f64>>,
    /// Per-iteration audit gaps and the `eta_k` they must respect.
    pub audits: Vec<(f64, f64)>,
    /// Step parameters used at each row.
    pub params: Vec<StepParams>,
    pub stop: StopReason,
    pub budget: Option<BudgetExhausted>,
}

impl RunResult {
    pub fn final_value(&self) -> Option<f64> {
        self.trace.last().map(|r| r.f_value)
    }
}

/// How each outer step obtains its gradient.
enum Source<'a> {
    Exact(&'a dyn Objective),
    Stochastic(&'a dyn StochasticObjective),
    Single(&'a dyn StochasticObjective),
    Smoothed(&'a SmoothedSaddle),
}

struct Runner<'a> {
    cfg: &'a SolverConfig,
    region: &'a Region,
    clock: Instant,
    rows: Vec<TraceRow>,
    audits: Vec<(f64, f64)>,
    params: Vec<StepParams>,
    batch_capped: bool,
    global_k: u64,
}

enum PhaseEnd {
    Done,
    Stop(StopReason),
    Budget(BudgetExhausted),
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a SolverConfig, region: &'a Region) -> Self {
        Runner {
            cfg,
            region,
            clock: Instant::now(),
            rows: Vec::new(),
            audits: Vec::new(),
            params: Vec::new(),
            batch_capped: false,
            global_k: 0,
        }
    }

    fn x0(&self) -> Result<Vec<f64>> {
        let x0 = match &self.cfg.x0 {
            Some(x) => x.clone(),
            None => self.region.default_start()?,
        };
        check_dim(self.region.dim(), x0.len())?;
        if !self.region.contains(&x0, 1e-8)? {
            return Err(Error::config("x0 is not in the feasible region"));
        }
        Ok(x0)
    }

    fn elapsed_ms(&self) -> f64 {
        self.clock.elapsed().as_secs_f64() * 1e3
    }

    fn check_limits(&self, sfo_calls: u64) -> Option<StopReason> {
        if let (Some(t), Some(last)) = (self.cfg.target_value, self.rows.last()) {
            if last.f_value <= t {
                return Some(StopReason::Target);
            }
        }
        if let Some(limit) = self.cfg.sfo_limit {
            if sfo_calls >= limit {
                return Some(StopReason::SfoLimit);
            }
        }
        if let Some(t) = self.cfg.time_limit {
            if self.clock.elapsed().as_secs_f64() >= t {
                return Some(StopReason::TimeLimit);
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn phase(
        &mut self,
        state: &mut SolverState,
        schedule: &ScheduleVariant,
        phase: u32,
        iterations: usize,
        source: &Source<'_>,
        inner: InnerMethod,
        value: &dyn Fn(&[f64]) -> Result<f64>,
    ) -> Result<PhaseEnd> {
        let alpha = self.cfg.constants.alpha;
        for k in 1..=iterations {
            if let Some(stop) = self.check_limits(state.sfo_calls) {
                return Ok(PhaseEnd::Stop(stop));
            }
            let mut params = schedule_eval_capped(schedule, k, &self.cfg.constants, self.cfg.batch_cap)?;
            if let Some(b) = self.cfg.batch_override {
                params.batch = b;
                params.batch_capped = false;
            }
            self.batch_capped |= params.batch_capped;
            let mut rng = rng::stream(self.cfg.seed, phase, k as u64);
            set_z(state, params.gamma);
            let g = match source {
                Source::Exact(obj) => {
                    state.fo_calls += 1;
                    obj.gradient(&state.z)?
                }
                Source::Stochastic(obj) => {
                    state.sfo_calls += params.batch;
                    minibatch_gradient(*obj, &state.z, params.batch, &mut rng)?
                }
                Source::Single(obj) => {
                    state.sfo_calls += 1;
                    obj.sample_gradient(&state.z, &mut rng)?
                }
                Source::Smoothed(obj) => {
                    state.fo_calls += 1;
                    obj.smoothed(&state.z, params.tau)?.grad
                }
            };
            let report = match finish_step(state, self.region, &params, alpha, g, inner, self.cfg.audit) {
                Ok(r) => r,
                Err(Error::Budget(b)) => return Ok(PhaseEnd::Budget(*b)),
                Err(e) => return Err(e),
            };
            if let Some(gap) = report.audit_gap {
                self.audits.push((gap, params.eta));
            }
            self.params.push(params);
            self.push_row(state, value(&state.y)?, &report.inner);
        }
        Ok(PhaseEnd::Done)
    }

    fn push_row(&mut self, state: &SolverState, f_value: f64, inner: &LcgResult) {
        self.global_k += 1;
        let c = state.cache.counters();
        let row = TraceRow {
            outer_k: self.global_k,
            wall_ms: self.elapsed_ms(),
            f_value,
            sfo_calls: state.sfo_calls,
            fo_calls: state.fo_calls,
            exact_lmo_calls: c.exact_lmo_calls,
            weak_sep_calls: c.weak_sep_calls,
            cache_hits: c.hits,
            inner_iters: inner.iterations as u64,
            phi_final: inner.phi_final(),
            cert_gap: inner.cert_gap,
        };
        self.rows.push(row);
    }

    fn finish(
        self,
        state: SolverState,
        phase_points: Vec<Vec<f64>>,
        end: PhaseEnd,
    ) -> RunResult {
        let (stop, budget) = match end {
            PhaseEnd::Done => (StopReason::IterationLimit, None),
            PhaseEnd::Stop(s) => (s, None),
            PhaseEnd::Budget(b) => (StopReason::Budget, Some(b)),
        };
        RunResult {
            trace: RunTrace {
                meta: RunMeta {
                    solver: self.cfg.solver.name().to_string(),
                    seed: self.cfg.seed,
                    config_hash: self.cfg.hash(),
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    batch_capped: self.batch_capped,
                },
                rows: self.rows,
            },
            x: state.x,
            y: state.y,
            phase_points,
            audits: self.audits,
            params: self.params,
            stop,
            budget,
        }
    }
}

fn check_kind(cfg: &SolverConfig, allowed: &[SolverKind], by: &str) -> Result<()> {
    cfg.validate()?;
    if !allowed.contains(&cfg.solver) {
        return Err(Error::config(format!("{by} cannot run solver {}", cfg.solver.name())));
    }
    Ok(())
}

/// CALSGD, CALGD, SCGS and the non-smooth variant.
pub fn smooth_run(cfg: &SolverConfig, obj: &dyn StochasticObjective, region: &Region) -> Result<RunResult> {
    use SolverKind as K;
    check_kind(cfg, &[K::Calsgd, K::Calgd, K::Scgs, K::CalsgdNonsmooth], "smooth_run")?;
    check_dim(region.dim(), obj.dim())?;
    let source = match cfg.solver {
        K::Calgd => Source::Exact(obj),
        K::CalsgdNonsmooth => Source::Single(obj),
        K::Scgs if !cfg.schedule.is_stochastic() => Source::Exact(obj),
        _ => Source::Stochastic(obj),
    };
    let inner = if cfg.solver == K::Scgs {
        InnerMethod::FrankWolfe
    } else {
        InnerMethod::Lazy
    };
    let mut runner = Runner::new(cfg, region);
    let mut state = SolverState::new(runner.x0()?, VertexCache::new(cfg.cache_capacity));
    let value = |y: &[f64]| obj.value(y);
    let end = runner.phase(&mut state, &cfg.schedule, 0, cfg.outer_limit, &source, inner, &value)?;
    Ok(runner.finish(state, Vec::new(), end))
}

/// SCGS baseline: the CALSGD outer loop with a Frank-Wolfe inner solver.
pub fn scgs_run(cfg: &SolverConfig, obj: &dyn StochasticObjective, region: &Region) -> Result<RunResult> {
    if cfg.solver != SolverKind::Scgs {
        return Err(Error::config("scgs_run needs solver = scgs"));
    }
    smooth_run(cfg, obj, region)
}

/// Restart schemes: `S` phases of `N` outer iterations, each warm-started at
/// the previous phase's `y_N`.
pub fn restart_run(cfg: &SolverConfig, obj: &dyn StochasticObjective, region: &Region) -> Result<RunResult> {
    use SolverKind as K;
    check_kind(cfg, &[K::CalgdRestart, K::CalsgdRestart], "restart_run")?;
    check_dim(region.dim(), obj.dim())?;
    if !(cfg.constants.strong_convexity > 0.0) {
        return Err(Error::config("restart solvers need strong_convexity > 0"));
    }
    let phases = cfg
        .restart_phases
        .ok_or_else(|| Error::config("restart solvers need restart_phases"))?;
    let horizon = cfg.schedule.horizon().expect("phase schedules carry a horizon");
    let source = if cfg.solver == K::CalgdRestart {
        Source::Exact(obj)
    } else {
        Source::Stochastic(obj)
    };
    let mut runner = Runner::new(cfg, region);
    let mut p = runner.x0()?;
    let mut cache = Some(VertexCache::new(cfg.cache_capacity));
    let mut points = Vec::new();
    let (mut sfo, mut fo) = (0, 0);
    let value = |y: &[f64]| obj.value(y);
    let iterations = horizon.min(cfg.outer_limit);
    for s in 1..=phases {
        let schedule = match cfg.schedule {
            ScheduleVariant::StronglyConvexDetPhase { horizon, .. } => {
                ScheduleVariant::StronglyConvexDetPhase { horizon, phase: s }
            }
            ScheduleVariant::StronglyConvexStochPhase { horizon, .. } => {
                ScheduleVariant::StronglyConvexStochPhase { horizon, phase: s }
            }
            _ => unreachable!("checked by validate"),
        };
        let mut state = SolverState::new(p.clone(), cache.take().expect("cache restored each phase"));
        state.sfo_calls = sfo;
        state.fo_calls = fo;
        let end = runner.phase(&mut state, &schedule, s, iterations, &source, InnerMethod::Lazy, &value)?;
        match end {
            PhaseEnd::Done => {
                p = state.y.clone();
                points.push(p.clone());
                sfo = state.sfo_calls;
                fo = state.fo_calls;
                if s == phases {
                    return Ok(runner.finish(state, points, PhaseEnd::Done));
                }
                cache = Some(state.cache);
            }
            other => return Ok(runner.finish(state, points, other)),
        }
    }
    unreachable!("phases >= 1 returns inside the loop")
}

/// Smoothed saddle solver on `max_y <Ax, y>`.
pub fn saddle_run(cfg: &SolverConfig, obj: &SmoothedSaddle, region: &Region) -> Result<RunResult> {
    check_kind(cfg, &[SolverKind::CalgdSaddle], "saddle_run")?;
    check_dim(region.dim(), obj.dim())?;
    let mut runner = Runner::new(cfg, region);
    let mut state = SolverState::new(runner.x0()?, VertexCache::new(cfg.cache_capacity));
    let value = |y: &[f64]| obj.value(y);
    let source = Source::Smoothed(obj);
    let end = runner.phase(&mut state, &cfg.schedule, 0, cfg.outer_limit, &source, InnerMethod::Lazy, &value)?;
    Ok(runner.finish(state, Vec::new(), end))
}

/// Online Frank-Wolfe baseline.
///
/// `d_t = (1 - rho_t) d_{t-1} + rho_t g_t`, `x_{t+1} = (1 - gamma_t) x_t +
/// gamma_t lmo(d_t)`; one exact LMO per step.
pub fn ofw_run(cfg: &SolverConfig, obj: &dyn StochasticObjective, region: &Region) -> Result<RunResult> {
    check_kind(cfg, &[SolverKind::Ofw], "ofw_run")?;
    check_dim(region.dim(), obj.dim())?;
    let mut runner = Runner::new(cfg, region);
    let mut state = SolverState::new(runner.x0()?, VertexCache::new(0));
    let mut d = vec![0.0; region.dim()];
    let mut end = PhaseEnd::Done;
    for t in 1..=cfg.outer_limit {
        if let Some(stop) = runner.check_limits(state.sfo_calls) {
            end = PhaseEnd::Stop(stop);
            break;
        }
        let tf = t as f64;
        let rho = tf.powf(-cfg.ofw.rho_exponent);
        let gamma = tf.powf(-cfg.ofw.gamma_exponent);
        let mut rng = rng::stream(cfg.seed, 0, t as u64);
        let g = minibatch_gradient(obj, &state.x, cfg.ofw.batch, &mut rng)?;
        state.sfo_calls += cfg.ofw.batch;
        lerp_into(&mut d, &g, rho);
        let v = state.cache.exact_lmo(region, &d)?;
        let gap = dot_diff(&d, &state.x, &v.point);
        lerp_into(&mut state.x, &v.point, gamma);
        state.y.clone_from(&state.x);
        state.k = t;
        runner.params.push(StepParams {
            beta: 0.0,
            gamma,
            eta: 0.0,
            batch: cfg.ofw.batch,
            tau: 0.0,
            batch_capped: false,
        });
        let f = obj.value(&state.y)?;
        let inner = LcgResult {
            point: Vec::new(),
            cert_gap: gap,
            iterations: 1,
            weak_sep_calls: 0,
            exact_lmo_calls: 1,
            cache_hits: 0,
            phi0: gap,
            phi_trace: Vec::new(),
            psi_trace: Vec::new(),
        };
        runner.push_row(&state, f, &inner);
    }
    Ok(runner.finish(state, Vec::new(), end))
}

/// An objective of any supported shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    LeastSquares(crate::objective::LeastSquares),
    L1Distance(crate::objective::L1Distance),
    Saddle(SmoothedSaddle),
}

/// Dispatches `cfg.solver` on `problem`.
pub fn run_solver(cfg: &SolverConfig, problem: &Problem, region: &Region) -> Result<RunResult> {
    let stochastic: &dyn StochasticObjective = match problem {
        Problem::LeastSquares(ls) => ls,
        Problem::L1Distance(l1) => l1,
        Problem::Saddle(s) => return saddle_run(cfg, s, region),
    };
    match cfg.solver {
        SolverKind::Calsgd | SolverKind::Calgd | SolverKind::Scgs | SolverKind::CalsgdNonsmooth => {
            smooth_run(cfg, stochastic, region)
        }
        SolverKind::CalgdRestart | SolverKind::CalsgdRestart => restart_run(cfg, stochastic, region),
        SolverKind::Ofw => ofw_run(cfg, stochastic, region),
        SolverKind::CalgdSaddle => Err(Error::config("calgd_saddle needs a saddle problem")),
    }
}
