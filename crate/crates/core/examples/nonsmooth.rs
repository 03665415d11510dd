//! Stochastic non-smooth variant on an l1 distance over the unit box.

use lazy_sliding::objective::{L1Distance, Objective};
use lazy_sliding::region::Region;
use lazy_sliding::schedule::{ProblemConstants, ScheduleVariant};
use lazy_sliding::solver::{smooth_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    let center = vec![0.2, 0.8, 0.5, 0.35, 0.9];
    let obj = L1Distance { center };
    let region = Region::unit_box(5);
    let d = region.diameter();
    let m = 2.0 * 5f64.sqrt();
    for n in [25usize, 100, 400] {
        let c = ProblemConstants::new(d).with_value_lipschitz(m).with_variance(0.0);
        let cfg = SolverConfig::new(
            SolverKind::CalsgdNonsmooth,
            ScheduleVariant::NonsmoothStochastic { horizon: n },
            c,
            n,
        );
        let res = smooth_run(&cfg, &obj, &region)?;
        let bound = 5.0 * d * m / (2.0 * (n as f64).sqrt());
        println!("N {n:>4}: f(y_N) {:.3e}  bound {bound:.3e}", obj.value(&res.y)?);
    }
    Ok(())
}
