//! Least squares over the spectrahedron with rank-one LMO updates.

use lazy_sliding::bench::{estimate_constants, gen_instance, InstanceSpec, RegionSpec};
use lazy_sliding::region::Region;
use lazy_sliding::schedule::ScheduleVariant;
use lazy_sliding::solver::{smooth_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    let inst = gen_instance(&InstanceSpec {
        region: RegionSpec::Explicit(Region::spectrahedron(6)),
        m: 400,
        density: 0.3,
        seed: 2,
        x_star_vertices: 8,
    })?;
    let c = estimate_constants(&inst)?;
    for kind in [SolverKind::Calsgd, SolverKind::Scgs] {
        let mut cfg = SolverConfig::new(kind, ScheduleVariant::SmoothStochastic, c.clone(), 300).with_seed(1);
        cfg.batch_override = Some(32);
        let res = smooth_run(&cfg, &inst.objective, &inst.region)?;
        let last = res.trace.last().expect("non-empty trace");
        println!(
            "{:<7} f {:.3e}  exact LMO {:>5}  inner iterations {:>5}",
            kind.name(),
            last.f_value,
            last.exact_lmo_calls,
            res.trace.rows.iter().map(|r| r.inner_iters).sum::<u64>()
        );
    }
    Ok(())
}
