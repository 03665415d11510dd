//! Step-size, accuracy and batch schedules for the sliding methods.
//!
//! Every schedule is a pure function of the outer index `k` and the problem
//! constants; nothing here holds state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on mini-batch sizes.
pub const DEFAULT_BATCH_CAP: u64 = 1 << 20;

/// Problem-level constants consumed by the schedules.
///
/// Only `diameter` and `alpha` are always required; the rest are checked by
/// the schedule variant that needs them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemConstants {
    /// Lipschitz constant of the gradient.
    #[serde(default)]
    pub lipschitz: Option<f64>,
    /// Strong convexity modulus (0 when absent).
    #[serde(default)]
    pub strong_convexity: f64,
    /// Variance bound of the stochastic first-order oracle.
    #[serde(default)]
    pub variance: Option<f64>,
    /// Lipschitz constant of the objective itself (non-smooth case).
    #[serde(default)]
    pub value_lipschitz: Option<f64>,
    /// Euclidean diameter of the feasible region.
    pub diameter: f64,
    /// Estimate of `||x0 - x*||`, at most `diameter`.
    #[serde(default)]
    pub initial_distance: Option<f64>,
    /// Operator norm of the saddle coupling matrix.
    #[serde(default)]
    pub operator_norm: Option<f64>,
    /// Strong convexity modulus of the prox function.
    #[serde(default)]
    pub prox_modulus: Option<f64>,
    /// Smoothing diameter `D_{Y,W}` (square root of `max_y W(y)`).
    #[serde(default)]
    pub smoothing_diameter: Option<f64>,
    /// Weak separation accuracy.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Upper estimate of the initial optimality gap.
    #[serde(default)]
    pub initial_gap: Option<f64>,
}

fn default_alpha() -> f64 {
    1.0
}

impl ProblemConstants {
    pub fn new(diameter: f64) -> Self {
        Self {
            lipschitz: None,
            strong_convexity: 0.0,
            variance: None,
            value_lipschitz: None,
            diameter,
            initial_distance: None,
            operator_norm: None,
            prox_modulus: None,
            smoothing_diameter: None,
            alpha: 1.0,
            initial_gap: None,
        }
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = Some(l);
        self
    }

    pub fn with_strong_convexity(mut self, mu: f64) -> Self {
        self.strong_convexity = mu;
        self
    }

    pub fn with_variance(mut self, sigma2: f64) -> Self {
        self.variance = Some(sigma2);
        self
    }

    pub fn with_value_lipschitz(mut self, m: f64) -> Self {
        self.value_lipschitz = Some(m);
        self
    }

    pub fn with_initial_distance(mut self, d0: f64) -> Self {
        self.initial_distance = Some(d0);
        self
    }

    pub fn with_saddle(mut self, operator_norm: f64, prox_modulus: f64, smoothing_diameter: f64) -> Self {
        self.operator_norm = Some(operator_norm);
        self.prox_modulus = Some(prox_modulus);
        self.smoothing_diameter = Some(smoothing_diameter);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_initial_gap(mut self, delta0: f64) -> Self {
        self.initial_gap = Some(delta0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let nonneg = |name: &str, v: Option<f64>| match v {
            Some(x) if !(x >= 0.0) => Err(Error::domain(format!("{name} must be >= 0, got {x}"))),
            _ => Ok(()),
        };
        nonneg("lipschitz", self.lipschitz)?;
        nonneg("variance", self.variance)?;
        nonneg("strong_convexity", Some(self.strong_convexity))?;
        nonneg("value_lipschitz", self.value_lipschitz)?;
        if !(self.diameter > 0.0) {
            return Err(Error::domain(format!("diameter must be > 0, got {}", self.diameter)));
        }
        if !(self.alpha >= 1.0) {
            return Err(Error::domain(format!("alpha must be >= 1, got {}", self.alpha)));
        }
        if let Some(d0) = self.initial_distance {
            if !(d0 > 0.0 && d0 <= self.diameter) {
                return Err(Error::domain(format!(
                    "initial_distance must lie in (0, diameter], got {d0}"
                )));
            }
        }
        Ok(())
    }

    fn require(&self, value: Option<f64>, constant: &'static str, by: &'static str) -> Result<f64> {
        value.ok_or(Error::MissingConstant {
            constant,
            required_by: by,
        })
    }

    fn positive(&self, value: Option<f64>, constant: &'static str, by: &'static str) -> Result<f64> {
        let v = self.require(value, constant, by)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::domain(format!("{constant} must be > 0 for {by}, got {v}")))
        }
    }

    /// `D_0` if set, otherwise the diameter (always a valid upper estimate).
    pub fn distance_estimate(&self) -> f64 {
        self.initial_distance.unwrap_or(self.diameter)
    }
}

/// Per-iteration parameters of the outer loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepParams {
    pub beta: f64,
    pub gamma: f64,
    pub eta: f64,
    pub batch: u64,
    /// Smoothing parameter; 0 for non-saddle schedules.
    pub tau: f64,
    /// True when the formula asked for a batch above the cap.
    pub batch_capped: bool,
}

/// The named parameter schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleVariant {
    /// Horizon-free stochastic schedule, `beta = 4L/(k+2)`.
    SmoothStochastic,
    /// Fixed-horizon stochastic schedule driven by `D_0`.
    SmoothStochasticFixedN { horizon: usize },
    /// Horizon-free deterministic schedule, `beta = 3L/(k+1)`.
    SmoothDeterministic,
    /// Fixed-horizon deterministic schedule driven by `D_0`.
    SmoothDeterministicFixedN { horizon: usize },
    /// Phase `phase` of the deterministic restart scheme.
    StronglyConvexDetPhase { horizon: usize, phase: u32 },
    /// Phase `phase` of the stochastic restart scheme.
    StronglyConvexStochPhase { horizon: usize, phase: u32 },
    /// Constant smoothing parameter for a known horizon.
    SaddleStatic { horizon: usize },
    /// Smoothing parameter decaying like `1/sqrt(k)`.
    SaddleDynamic,
    /// Constant-step schedule for non-smooth stochastic problems.
    NonsmoothStochastic { horizon: usize },
}

impl ScheduleVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleVariant::SmoothStochastic => "smooth_stochastic",
            ScheduleVariant::SmoothStochasticFixedN { .. } => "smooth_stochastic_fixed_n",
            ScheduleVariant::SmoothDeterministic => "smooth_deterministic",
            ScheduleVariant::SmoothDeterministicFixedN { .. } => "smooth_deterministic_fixed_n",
            ScheduleVariant::StronglyConvexDetPhase { .. } => "strongly_convex_det_phase",
            ScheduleVariant::StronglyConvexStochPhase { .. } => "strongly_convex_stoch_phase",
            ScheduleVariant::SaddleStatic { .. } => "saddle_static",
            ScheduleVariant::SaddleDynamic => "saddle_dynamic",
            ScheduleVariant::NonsmoothStochastic { .. } => "nonsmooth_stochastic",
        }
    }

    pub fn horizon(&self) -> Option<usize> {
        match *self {
            ScheduleVariant::SmoothStochasticFixedN { horizon }
            | ScheduleVariant::SmoothDeterministicFixedN { horizon }
            | ScheduleVariant::StronglyConvexDetPhase { horizon, .. }
            | ScheduleVariant::StronglyConvexStochPhase { horizon, .. }
            | ScheduleVariant::SaddleStatic { horizon }
            | ScheduleVariant::NonsmoothStochastic { horizon } => Some(horizon),
            ScheduleVariant::SmoothStochastic
            | ScheduleVariant::SmoothDeterministic
            | ScheduleVariant::SaddleDynamic => None,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(
            self,
            ScheduleVariant::SmoothStochastic
                | ScheduleVariant::SmoothStochasticFixedN { .. }
                | ScheduleVariant::StronglyConvexStochPhase { .. }
                | ScheduleVariant::NonsmoothStochastic { .. }
        )
    }

    pub fn is_saddle(&self) -> bool {
        matches!(
            self,
            ScheduleVariant::SaddleStatic { .. } | ScheduleVariant::SaddleDynamic
        )
    }

    /// Whether the schedule is built to satisfy `gamma_1 = 1` and
    /// `L gamma_k <= beta_k` (with the smoothed constant for saddle variants).
    pub fn claims_step_condition(&self) -> bool {
        !matches!(self, ScheduleVariant::NonsmoothStochastic { .. })
    }

    fn check_shape(&self) -> Result<()> {
        if let Some(0) = self.horizon() {
            return Err(Error::domain(format!("{} requires horizon >= 1", self.name())));
        }
        match self {
            ScheduleVariant::StronglyConvexDetPhase { phase: 0, .. }
            | ScheduleVariant::StronglyConvexStochPhase { phase: 0, .. } => {
                Err(Error::domain(format!("{} requires phase >= 1", self.name())))
            }
            _ => Ok(()),
        }
    }
}

/// Evaluates `variant` at outer index `k` with the default batch cap.
pub fn schedule_eval(variant: &ScheduleVariant, k: usize, c: &ProblemConstants) -> Result<StepParams> {
    schedule_eval_capped(variant, k, c, DEFAULT_BATCH_CAP)
}

/// Evaluates `variant` at outer index `k`, clamping batches to `[1, cap]`.
pub fn schedule_eval_capped(
    variant: &ScheduleVariant,
    k: usize,
    c: &ProblemConstants,
    cap: u64,
) -> Result<StepParams> {
    if k < 1 {
        return Err(Error::domain("schedule index k must be >= 1"));
    }
    variant.check_shape()?;
    let name = variant.name();
    let kf = k as f64;
    let dx = c.diameter;
    let batch = |raw: f64| clamp_batch(raw, cap);

    let params = match *variant {
        ScheduleVariant::SmoothStochastic => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            let s2 = c.require(c.variance, "variance", name)?;
            let (b, capped) = batch(s2 * (kf + 2.0).powi(3) / (l * l * dx * dx));
            StepParams {
                beta: 4.0 * l / (kf + 2.0),
                gamma: 3.0 / (kf + 2.0),
                eta: l * dx * dx / (kf * (kf + 1.0)),
                batch: b,
                tau: 0.0,
                batch_capped: capped,
            }
        }
        ScheduleVariant::SmoothStochasticFixedN { horizon } => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            let s2 = c.require(c.variance, "variance", name)?;
            let d0 = c.distance_estimate();
            let n = horizon as f64;
            let (b, capped) = batch(s2 * n * (kf + 1.0).powi(2) / (l * l * d0 * d0));
            StepParams {
                beta: 3.0 * l / kf,
                gamma: 2.0 / (kf + 1.0),
                eta: 2.0 * l * d0 * d0 / (n * kf),
                batch: b,
                tau: 0.0,
                batch_capped: capped,
            }
        }
        ScheduleVariant::SmoothDeterministic => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            StepParams {
                beta: 3.0 * l / (kf + 1.0),
                gamma: 3.0 / (kf + 2.0),
                eta: l * dx * dx / (kf * (kf + 1.0)),
                batch: 1,
                tau: 0.0,
                batch_capped: false,
            }
        }
        ScheduleVariant::SmoothDeterministicFixedN { horizon } => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            let d0 = c.distance_estimate();
            let n = horizon as f64;
            StepParams {
                beta: 2.0 * l / kf,
                gamma: 2.0 / (kf + 1.0),
                eta: 2.0 * l * d0 * d0 / (n * kf),
                batch: 1,
                tau: 0.0,
                batch_capped: false,
            }
        }
        ScheduleVariant::StronglyConvexDetPhase { horizon, phase } => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            let mu = c.positive(Some(c.strong_convexity), "strong_convexity", name)?;
            let delta0 = c.positive(c.initial_gap, "initial_gap", name)?;
            let n = horizon as f64;
            StepParams {
                beta: 2.0 * l / kf,
                gamma: 2.0 / (kf + 1.0),
                eta: phase_eta(l, mu, delta0, phase, n, kf),
                batch: 1,
                tau: 0.0,
                batch_capped: false,
            }
        }
        ScheduleVariant::StronglyConvexStochPhase { horizon, phase } => {
            let l = c.positive(c.lipschitz, "lipschitz", name)?;
            let mu = c.positive(Some(c.strong_convexity), "strong_convexity", name)?;
            let delta0 = c.positive(c.initial_gap, "initial_gap", name)?;
            let s2 = c.require(c.variance, "variance", name)?;
            let n = horizon as f64;
            let target = delta0 * 2f64.powi(-(phase as i32));
            let (b, capped) = batch(mu * s2 * n * (kf + 1.0).powi(2) / (4.0 * l * l * target));
            StepParams {
                beta: 3.0 * l / kf,
                gamma: 2.0 / (kf + 1.0),
                eta: phase_eta(l, mu, delta0, phase, n, kf),
                batch: b,
                tau: 0.0,
                batch_capped: capped,
            }
        }
        ScheduleVariant::SaddleStatic { horizon } => {
            let (a, sw, dyw) = saddle_constants(c, name)?;
            let tau = 2.0 * a * dx / (dyw * sw.sqrt() * horizon as f64);
            saddle_params(a, sw, dx, tau, kf)
        }
        ScheduleVariant::SaddleDynamic => {
            let (a, sw, dyw) = saddle_constants(c, name)?;
            let tau = 2.0 * a * dx / (dyw * (sw * kf).sqrt());
            saddle_params(a, sw, dx, tau, kf)
        }
        ScheduleVariant::NonsmoothStochastic { horizon } => {
            let m = c.require(c.value_lipschitz, "value_lipschitz", name)?;
            let s2 = c.require(c.variance, "variance", name)?;
            let spread = (s2 + m * m).sqrt();
            if spread == 0.0 {
                return Err(Error::domain(format!(
                    "{name} needs variance + value_lipschitz^2 > 0"
                )));
            }
            let n = horizon as f64;
            StepParams {
                beta: n.sqrt() * spread / dx,
                gamma: 1.0 / kf,
                eta: dx * spread / n.sqrt(),
                batch: 1,
                tau: 0.0,
                batch_capped: false,
            }
        }
    };
    Ok(params)
}

fn phase_eta(l: f64, mu: f64, delta0: f64, phase: u32, n: f64, k: f64) -> f64 {
    8.0 * l * delta0 * 2f64.powi(-(phase as i32)) / (mu * n * k)
}

fn saddle_constants(c: &ProblemConstants, name: &'static str) -> Result<(f64, f64, f64)> {
    Ok((
        c.positive(c.operator_norm, "operator_norm", name)?,
        c.positive(c.prox_modulus, "prox_modulus", name)?,
        c.positive(c.smoothing_diameter, "smoothing_diameter", name)?,
    ))
}

/// Smoothed Lipschitz constant `||A||^2 / (tau sigma_omega)`.
pub fn smoothed_lipschitz(operator_norm: f64, prox_modulus: f64, tau: f64) -> f64 {
    operator_norm * operator_norm / (tau * prox_modulus)
}

fn saddle_params(a: f64, sw: f64, dx: f64, tau: f64, k: f64) -> StepParams {
    let l_tau = smoothed_lipschitz(a, sw, tau);
    StepParams {
        beta: 3.0 * l_tau / (k + 1.0),
        gamma: 3.0 / (k + 2.0),
        eta: l_tau * dx * dx / (k * k),
        batch: 1,
        tau,
        batch_capped: false,
    }
}

fn clamp_batch(raw: f64, cap: u64) -> (u64, bool) {
    let cap = cap.max(1);
    let b = raw.ceil();
    if !(b < cap as f64) {
        // also catches NaN / inf
        return (cap, b > cap as f64);
    }
    ((b as u64).max(1), false)
}

/// `Gamma_k` for the given `gamma_1..gamma_k`: `Gamma_1 = 1`,
/// `Gamma_k = Gamma_{k-1} (1 - gamma_k)`.
pub fn gamma_product(gammas: &[f64]) -> Result<f64> {
    if gammas.is_empty() {
        return Err(Error::domain("gamma_product needs at least one gamma"));
    }
    if let Some(g) = gammas.iter().find(|g| !(0.0..=1.0).contains(*g)) {
        return Err(Error::domain(format!("gamma {g} outside [0, 1]")));
    }
    Ok(gammas[1..].iter().fold(1.0, |acc, g| acc * (1.0 - g)))
}

/// Outer iterations per phase and number of phases of a restart scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePlan {
    pub horizon: usize,
    pub phases: u32,
}

/// Per-phase horizon `N` and phase count `S` for the restart schemes.
///
/// Deterministic: `N = ceil(2 sqrt(6L/mu))`; stochastic: `N = ceil(4 sqrt(2L/mu))`;
/// both use `S = ceil(log2 max(1, delta0/eps))`.
pub fn restart_phase_plan(c: &ProblemConstants, stochastic: bool, eps: f64) -> Result<PhasePlan> {
    if !(c.strong_convexity > 0.0) {
        return Err(Error::domain("restart scheme requires strong_convexity > 0"));
    }
    if !(eps > 0.0) {
        return Err(Error::domain("target accuracy must be > 0"));
    }
    let by = "restart_phase_plan";
    let l = c.positive(c.lipschitz, "lipschitz", by)?;
    let delta0 = c.positive(c.initial_gap, "initial_gap", by)?;
    Ok(PhasePlan {
        horizon: restart_horizon(l, c.strong_convexity, stochastic),
        phases: (delta0 / eps).max(1.0).log2().ceil() as u32,
    })
}

pub(crate) fn restart_horizon(l: f64, mu: f64, stochastic: bool) -> usize {
    let raw = if stochastic {
        4.0 * (2.0 * l / mu).sqrt()
    } else {
        2.0 * (6.0 * l / mu).sqrt()
    };
    (raw.ceil() as usize).max(1)
}
