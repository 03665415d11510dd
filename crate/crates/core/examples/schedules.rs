//! Step parameters of every schedule family at a few outer indices.

use lazy_sliding::schedule::{restart_phase_plan, schedule_eval, ProblemConstants, ScheduleVariant};

fn main() -> lazy_sliding::Result<()> {
    let c = ProblemConstants::new(2f64.sqrt())
        .with_lipschitz(2.0)
        .with_variance(4.0)
        .with_strong_convexity(0.5)
        .with_initial_gap(1.0)
        .with_value_lipschitz(3.0)
        .with_saddle(1.5, 1.0, 0.6);
    let variants = [
        ScheduleVariant::SmoothStochastic,
        ScheduleVariant::SmoothStochasticFixedN { horizon: 100 },
        ScheduleVariant::SmoothDeterministic,
        ScheduleVariant::SmoothDeterministicFixedN { horizon: 100 },
        ScheduleVariant::StronglyConvexDetPhase { horizon: 20, phase: 3 },
        ScheduleVariant::StronglyConvexStochPhase { horizon: 20, phase: 3 },
        ScheduleVariant::SaddleStatic { horizon: 100 },
        ScheduleVariant::SaddleDynamic,
        ScheduleVariant::NonsmoothStochastic { horizon: 100 },
    ];
    println!("{:<30} {:>4} {:>11} {:>9} {:>11} {:>8} {:>9}", "schedule", "k", "beta", "gamma", "eta", "batch", "tau");
    for v in &variants {
        for k in [1usize, 10, 20] {
            let p = schedule_eval(v, k, &c)?;
            println!(
                "{:<30} {:>4} {:>11.4e} {:>9.4} {:>11.4e} {:>8} {:>9.3e}",
                v.name(),
                k,
                p.beta,
                p.gamma,
                p.eta,
                p.batch,
                p.tau
            );
        }
    }
    let plan = restart_phase_plan(&c, false, 1e-3)?;
    println!("restart plan for eps = 1e-3: {} phases of {} iterations", plan.phases, plan.horizon);
    Ok(())
}
