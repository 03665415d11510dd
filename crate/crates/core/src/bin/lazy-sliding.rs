use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lazy_sliding::acceptance;
use lazy_sliding::bench::{gen_instance, parse_seeds, run_experiment, summarize_dir, ExperimentConfig, InstanceSpec};
use lazy_sliding::{Error, Result};

#[derive(Parser)]
#[command(name = "lazy-sliding", version, about = "Lazy conditional gradient sliding experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files from an instance spec.
    Gen(Common),
    /// Run an experiment and write traces, manifest and summary.
    Run(Common),
    /// Recompute summary.json from the traces in a run directory.
    Summarize(Common),
    /// Run the acceptance checks.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Instance spec (gen) or experiment config (run).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (gen, run) or run directory (summarize).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seeds as `a..b` (half-open), `a..=b`, or `s1,s2,...`.
    #[arg(long)]
    seeds: Option<String>,
    /// Wall-clock limit per run, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Worker threads; LAZY_SLIDING_DETERMINISTIC=1 forces one.
    #[arg(long)]
    jobs: Option<usize>,
    /// Acceptance criteria to run (verify only); defaults to all.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

fn require<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::config(format!("missing --{flag}")))
}

fn gen(args: &Common) -> Result<bool> {
    let config = require(&args.config, "config")?;
    let out = require(&args.out, "out")?;
    let text = std::fs::read_to_string(config).map_err(|e| Error::io(config, e))?;
    let spec: InstanceSpec = serde_json::from_str(&text)?;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let jobs: Vec<(InstanceSpec, PathBuf)> = match &args.seeds {
        None => vec![(spec.clone(), out.join("instance.json"))],
        Some(s) => parse_seeds(s)?
            .into_iter()
            .map(|seed| {
                let spec = InstanceSpec { seed, ..spec.clone() };
                (spec, out.join(format!("instance_seed{seed}.json")))
            })
            .collect(),
    };
    for (spec, path) in jobs {
        gen_instance(&spec)?.write(&path)?;
        println!("{}", path.display());
    }
    Ok(true)
}

fn run(args: &Common) -> Result<bool> {
    let mut exp = ExperimentConfig::from_path(require(&args.config, "config")?)?;
    if let Some(s) = &args.seeds {
        exp.seeds = parse_seeds(s)?;
    }
    if let Some(t) = args.time_limit {
        exp.budgets.time_limit = Some(t);
    }
    let out = run_experiment(&exp, args.out.as_deref(), args.jobs)?;
    let budget_errors = out.summary.budget_errors;
    println!("{}", serde_json::to_string_pretty(&out.summary)?);
    if budget_errors > 0 {
        eprintln!("{budget_errors} run(s) exhausted the inner budget");
    }
    Ok(budget_errors == 0)
}

fn summarize(args: &Common) -> Result<bool> {
    let summary = summarize_dir(require(&args.out, "out")?)?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(true)
}

fn verify(args: &Common) -> Result<bool> {
    let ids: Vec<u8> = if args.only.is_empty() {
        acceptance::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        args.only.clone()
    };
    let mut all = true;
    for id in ids {
        match acceptance::run(id) {
            Ok(report) => {
                println!("{}", report.line());
                all &= report.passed;
            }
            Err(e) => {
                println!("FAIL {id:>2}: {e}");
                all = false;
            }
        }
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Summarize(a) => summarize(a),
        Command::Verify(a) => {
            if let Some(j) = a.jobs {
                // acceptance checks size their pools from the global setting
                let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
            }
            verify(a)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
