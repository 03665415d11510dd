use std::path::Path;
use std::process::Command;

use lazy_sliding::bench::{
    gen_instance, parse_seeds, run_experiment, summarize_dir, Budgets, ExperimentConfig, GeneratedRegion,
    InstanceSource, InstanceSpec, RegionSpec, SolverEntry,
};
use lazy_sliding::solver::{OfwParams, SolverKind, TraceRow, CSV_HEADER};

fn spec(seed: u64) -> InstanceSpec {
    InstanceSpec {
        region: RegionSpec::Generated(GeneratedRegion::Hamiltonian { nodes: 5 }),
        m: 200,
        density: 0.6,
        seed,
        x_star_vertices: 8,
    }
}

fn entry(label: &str, solver: SolverKind) -> SolverEntry {
    SolverEntry {
        label: label.into(),
        solver,
        schedule: None,
        alpha: None,
        batch: Some(32),
        cache_capacity: None,
        ofw: (solver == SolverKind::Ofw).then(|| OfwParams { batch: 32, ..OfwParams::default() }),
        restart_phases: None,
    }
}

fn experiment(solvers: Vec<SolverEntry>) -> ExperimentConfig {
    ExperimentConfig {
        name: "small".into(),
        instance: InstanceSource::Generate(spec(1)),
        solvers,
        seeds: vec![0, 1, 2],
        budgets: Budgets {
            outer_limit: 60,
            time_limit: None,
            sfo_limit: None,
            target_value: None,
        },
        thresholds: vec![1e-1, 1e-2, 1e-3],
        constants: None,
    }
}

fn all_solvers() -> Vec<SolverEntry> {
    vec![
        entry("calsgd", SolverKind::Calsgd),
        entry("scgs", SolverKind::Scgs),
        entry("ofw", SolverKind::Ofw),
    ]
}

fn strip_wall(csv: &str) -> String {
    csv.lines()
        .skip(1)
        .map(|l| {
            let row = TraceRow::from_csv(l).unwrap();
            TraceRow { wall_ms: 0.0, ..row }.to_csv()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 })
}

#[test]
fn instances_regenerate_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    gen_instance(&spec(4)).unwrap().write(&a).unwrap();
    gen_instance(&spec(4)).unwrap().write(&b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    gen_instance(&spec(5)).unwrap().write(&b).unwrap();
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let back = lazy_sliding::bench::Instance::read(&a).unwrap();
    assert_eq!(back, gen_instance(&spec(4)).unwrap());
}

#[test]
fn experiment_writes_consistent_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let exp = experiment(all_solvers());
    let out = run_experiment(&exp, Some(dir.path()), Some(2)).unwrap();
    assert_eq!(out.manifest.runs.len(), 9);
    assert_eq!(out.summary.runs, 9);

    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let again = summarize_dir(dir.path()).unwrap();
    assert_eq!(serde_json::to_value(&again).unwrap(), written);
    assert_eq!(serde_json::to_value(&out.summary).unwrap(), written);

    // independent scan of the CSV files
    for label in ["calsgd", "scgs", "ofw"] {
        let summary = again.solver(label).unwrap();
        for (i, &t) in exp.thresholds.iter().enumerate() {
            let mut iters = Vec::new();
            let mut sfo = Vec::new();
            let mut lmo = Vec::new();
            for seed in &exp.seeds {
                let text = std::fs::read_to_string(dir.path().join(format!("{label}_seed{seed}.csv"))).unwrap();
                let mut lines = text.lines();
                assert_eq!(lines.next().unwrap(), CSV_HEADER);
                for line in lines {
                    let cols: Vec<&str> = line.split(',').collect();
                    assert_eq!(cols.len(), 11);
                    if cols[2].parse::<f64>().unwrap() <= t {
                        iters.push(cols[0].parse::<f64>().unwrap());
                        sfo.push(cols[3].parse::<f64>().unwrap());
                        lmo.push(cols[5].parse::<f64>().unwrap());
                        break;
                    }
                }
            }
            let s = &summary.thresholds[i];
            assert_eq!(s.threshold, t);
            assert_eq!(s.hits, iters.len());
            assert_eq!(s.median_iterations, median(iters));
            assert_eq!(s.median_sfo_calls, median(sfo));
            assert_eq!(s.median_exact_lmo_calls, median(lmo));
        }
    }
}

#[test]
fn empty_solver_list_runs_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_experiment(&experiment(Vec::new()), Some(dir.path()), None).unwrap();
    assert_eq!(out.summary.runs, 0);
    assert!(out.summary.solvers.is_empty());
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn results_do_not_depend_on_job_count() {
    let exp = experiment(all_solvers());
    let d1 = tempfile::tempdir().unwrap();
    let d4 = tempfile::tempdir().unwrap();
    let a = run_experiment(&exp, Some(d1.path()), Some(1)).unwrap();
    run_experiment(&exp, Some(d4.path()), Some(4)).unwrap();
    for rec in &a.manifest.runs {
        let x = std::fs::read_to_string(d1.path().join(&rec.file)).unwrap();
        let y = std::fs::read_to_string(d4.path().join(&rec.file)).unwrap();
        assert_eq!(strip_wall(&x), strip_wall(&y), "{}", rec.file);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let mut exp = experiment(vec![entry("a", SolverKind::Calsgd), entry("a", SolverKind::Scgs)]);
    assert!(exp.validate().is_err());
    exp.solvers.pop();
    exp.budgets.outer_limit = 0;
    assert!(run_experiment(&exp, None, None).is_err());
    assert_ne!(experiment(all_solvers()).hash(), experiment(Vec::new()).hash());
}

#[test]
fn seed_syntax() {
    assert_eq!(parse_seeds("0..4").unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(parse_seeds("1..=2").unwrap(), vec![1, 2]);
    assert_eq!(parse_seeds("7").unwrap(), vec![7]);
    assert_eq!(parse_seeds("3,1,2").unwrap(), vec![3, 1, 2]);
    assert!(parse_seeds("2..2").is_err());
    assert!(parse_seeds("a..b").is_err());
    assert!(parse_seeds("").is_err());
}

fn cli(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lazy-sliding"))
        .args(args)
        .current_dir(dir)
        .env_remove("LAZY_SLIDING_DETERMINISTIC")
        .output()
        .unwrap()
}

#[test]
fn command_line_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("inst.json"), serde_json::to_string(&spec(2)).unwrap()).unwrap();
    let out = cli(&["gen", "--config", "inst.json", "--out", "inst"], p);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(p.join("inst/instance.json").exists());
    let out = cli(&["gen", "--config", "inst.json", "--out", "many", "--seeds", "0..2"], p);
    assert!(out.status.success());
    assert!(p.join("many/instance_seed0.json").exists());
    assert!(p.join("many/instance_seed1.json").exists());

    let mut exp = experiment(vec![entry("calsgd", SolverKind::Calsgd), entry("scgs", SolverKind::Scgs)]);
    exp.instance = InstanceSource::File { path: "inst/instance.json".into() };
    std::fs::write(p.join("exp.json"), serde_json::to_string(&exp).unwrap()).unwrap();
    let out = cli(&["run", "--config", "exp.json", "--out", "res", "--seeds", "0..2", "--jobs", "2"], p);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let printed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed["runs"], 4);
    assert!(p.join("res/calsgd_seed1.csv").exists());
    assert!(!p.join("res/calsgd_seed2.csv").exists());

    let out = cli(&["summarize", "--out", "res"], p);
    assert!(out.status.success());
    let again: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(again, printed);

    let out = Command::new(env!("CARGO_BIN_EXE_lazy-sliding"))
        .args(["run", "--config", "exp.json", "--out", "det", "--seeds", "0..2"])
        .current_dir(p)
        .env("LAZY_SLIDING_DETERMINISTIC", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    for f in ["calsgd_seed0.csv", "scgs_seed1.csv"] {
        let x = std::fs::read_to_string(p.join("res").join(f)).unwrap();
        let y = std::fs::read_to_string(p.join("det").join(f)).unwrap();
        assert_eq!(strip_wall(&x), strip_wall(&y));
    }
}

#[test]
fn command_line_verify_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["verify", "--only", "7"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("PASS  7"), "{text}");

    let out = cli(&["run", "--out", "x"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["run", "--config", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["summarize", "--out", "nowhere"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
