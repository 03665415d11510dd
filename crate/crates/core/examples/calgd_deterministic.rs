//! Deterministic lazy gradient sliding on a distance objective over the simplex.

use lazy_sliding::objective::LeastSquares;
use lazy_sliding::region::Region;
use lazy_sliding::schedule::{ProblemConstants, ScheduleVariant};
use lazy_sliding::solver::{smooth_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    let n = 10;
    let x_star: Vec<f64> = (1..=n).map(|i| i as f64 / 55.0).collect();
    let obj = LeastSquares::distance_to(&x_star);
    let region = Region::simplex(n);
    let c = ProblemConstants::new(region.diameter()).with_lipschitz(2.0);
    let cfg = SolverConfig::new(SolverKind::Calgd, ScheduleVariant::SmoothDeterministic, c, 200).with_audit(true);
    let res = smooth_run(&cfg, &obj, &region)?;
    for row in res.trace.rows.iter().filter(|r| [1, 10, 50, 100, 200].contains(&r.outer_k)) {
        let bound = 15.0 * 2.0 * 2.0 / (2.0 * ((row.outer_k + 1) * (row.outer_k + 2)) as f64);
        println!(
            "k {:>3}  f(y_k) {:.3e}  bound {:.3e}  exact LMO {:>4}  weak sep {:>4}",
            row.outer_k, row.f_value, bound, row.exact_lmo_calls, row.weak_sep_calls
        );
    }
    let worst = res.audits.iter().map(|(g, e)| g / e).fold(0.0, f64::max);
    println!("largest audited inner gap / eta: {worst:.3}");
    Ok(())
}
