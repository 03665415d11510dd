//! Paired multi-seed comparison through the benchmark harness.

use lazy_sliding::bench::{run_experiment, Budgets, ExperimentConfig, GeneratedRegion, InstanceSource, InstanceSpec, RegionSpec, SolverEntry};
use lazy_sliding::solver::{OfwParams, SolverKind};

fn entry(label: &str, solver: SolverKind) -> SolverEntry {
    SolverEntry {
        label: label.into(),
        solver,
        schedule: None,
        alpha: None,
        batch: Some(128),
        cache_capacity: None,
        ofw: Some(OfwParams { batch: 128, ..OfwParams::default() }),
        restart_phases: None,
    }
}

fn main() -> lazy_sliding::Result<()> {
    let exp = ExperimentConfig {
        name: "hamiltonian6".into(),
        instance: InstanceSource::Generate(InstanceSpec {
            region: RegionSpec::Generated(GeneratedRegion::Hamiltonian { nodes: 6 }),
            m: 2000,
            density: 0.6,
            seed: 1,
            x_star_vertices: 8,
        }),
        solvers: vec![
            entry("calsgd", SolverKind::Calsgd),
            entry("scgs", SolverKind::Scgs),
            entry("ofw", SolverKind::Ofw),
        ],
        seeds: (0..4).collect(),
        budgets: Budgets { outer_limit: 400, time_limit: None, sfo_limit: None, target_value: None },
        thresholds: vec![1e-1, 1e-2, 1e-3],
        constants: None,
    };
    let out_dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    let out = run_experiment(&exp, out_dir.as_deref(), None)?;
    for s in &out.summary.solvers {
        for t in &s.thresholds {
            println!(
                "{:<7} f <= {:.0e}: {}/{} runs, median SFO {:>9}, median exact LMO {:>6}",
                s.label,
                t.threshold,
                t.hits,
                s.runs,
                t.median_sfo_calls.map_or("-".into(), |v| format!("{v:.0}")),
                t.median_exact_lmo_calls.map_or("-".into(), |v| format!("{v:.0}"))
            );
        }
    }
    Ok(())
}
