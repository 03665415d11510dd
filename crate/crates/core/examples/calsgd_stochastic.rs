//! Stochastic lazy gradient sliding on a generated least-squares instance.

use lazy_sliding::bench::{estimate_constants, gen_instance, GeneratedRegion, InstanceSpec, RegionSpec};
use lazy_sliding::schedule::ScheduleVariant;
use lazy_sliding::solver::{smooth_run, SolverConfig, SolverKind};

fn main() -> lazy_sliding::Result<()> {
    let inst = gen_instance(&InstanceSpec {
        region: RegionSpec::Generated(GeneratedRegion::LayeredDag { layers: 4, width: 3 }),
        m: 1000,
        density: 0.5,
        seed: 7,
        x_star_vertices: 8,
    })?;
    let c = estimate_constants(&inst)?;
    println!("L {:.1}  D {:.3}  sigma^2 {:.1}", c.lipschitz.unwrap_or(0.0), c.diameter, c.variance.unwrap_or(0.0));
    let mut cfg = SolverConfig::new(SolverKind::Calsgd, ScheduleVariant::SmoothStochastic, c, 400).with_seed(3);
    cfg.batch_override = Some(64);
    let res = smooth_run(&cfg, &inst.objective, &inst.region)?;
    for t in [1e-1, 1e-2, 1e-3] {
        match res.trace.first_hit(t) {
            Some(r) => println!("f <= {t:.0e} at k {} after {} SFO calls", r.outer_k, r.sfo_calls),
            None => println!("f <= {t:.0e} not reached"),
        }
    }
    let last = res.trace.last().expect("non-empty trace");
    println!(
        "final f {:.2e}; {} exact LMO calls for {} weak separation calls",
        last.f_value, last.exact_lmo_calls, last.weak_sep_calls
    );
    Ok(())
}
