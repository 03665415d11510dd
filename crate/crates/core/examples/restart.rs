//! Restarted solver on a strongly convex quadratic.

use lazy_sliding::linalg::Matrix;
use lazy_sliding::objective::{LeastSquares, Objective};
use lazy_sliding::region::Region;
use lazy_sliding::schedule::{restart_phase_plan, ProblemConstants, ScheduleVariant};
use lazy_sliding::solver::{restart_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    let n = 10;
    let region = Region::simplex(n);
    let x_star = vec![0.1; n];
    let weights: Vec<f64> = (0..n).map(|i| (1.0 + i as f64 / 4.5).sqrt()).collect();
    let obj = LeastSquares::with_solution(Matrix::diagonal(&weights), &x_star)?;
    let x0 = region.default_start()?;
    let delta0 = obj.value(&x0)?;
    // f = sum w_i^2 (x_i - x*_i)^2 with w_i^2 in [1, 3]
    let c = ProblemConstants::new(region.diameter())
        .with_lipschitz(6.0)
        .with_strong_convexity(2.0)
        .with_initial_gap(delta0);
    let plan = restart_phase_plan(&c, false, delta0 * 1e-4)?;
    let schedule = ScheduleVariant::StronglyConvexDetPhase { horizon: plan.horizon, phase: 1 };
    let mut cfg = SolverConfig::new(SolverKind::CalgdRestart, schedule, c, plan.horizon);
    cfg.restart_phases = Some(plan.phases);
    let res = restart_run(&cfg, &obj, &region)?;
    for (s, p) in res.phase_points.iter().enumerate() {
        println!(
            "phase {:>2}: f(p_s) {:.3e}  target {:.3e}",
            s + 1,
            obj.value(p)?,
            delta0 * 0.5f64.powi(s as i32 + 1)
        );
    }
    Ok(())
}
