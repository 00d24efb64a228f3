use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lconvex_warmstart::descent::{steepest_descent, DescentOptions};
use lconvex_warmstart::error::{Error, Result};
use lconvex_warmstart::extract::{extract_argmin_system, BlackBoxOracle, MAX_EXTRACT_DIM};
use lconvex_warmstart::harness::{
    instance_stream, load_dataset, run_adversary, run_online_experiment, write_csv, write_dataset,
    ExperimentConfig, Method,
};
use lconvex_warmstart::lattice::round_half_down;
use lconvex_warmstart::matching::MatchingInstance;
use lconvex_warmstart::oracle;
use lconvex_warmstart::polyhedral::{evaluate, InequalitySystem};

#[derive(Parser)]
#[command(name = "warmstart", version, about = "Warm-started matching duals and learned predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random matching instances into a directory.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: u32,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance by steepest descent on the dual.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// JSON array with one real prediction per vertex.
        #[arg(long)]
        prediction: Option<PathBuf>,
        #[arg(long)]
        long_step: bool,
        /// Cross-check against brute-force references.
        #[arg(long)]
        check: bool,
    },
    /// Distance from a point to an inequality system, with a subgradient.
    Mu {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run the online learner over a dataset directory.
    Learn {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "mu")]
        loss: String,
        #[arg(long, default_value_t = 0.1)]
        rho: f64,
        #[arg(long = "C")]
        radius: Option<f64>,
        /// Recorded in the CSV only.
        #[arg(long, default_value_t = 0)]
        sigma: u32,
        /// Recorded in the CSV only.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        long_step: bool,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fixed-rate OGD against the adversarial sequence.
    Adversary {
        #[arg(long)]
        n: usize,
        #[arg(long = "C")]
        radius: i64,
        #[arg(long = "T")]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inequality system describing the optimal duals of an instance.
    ExtractArgmin {
        #[arg(long)]
        instance: PathBuf,
        /// Use value queries only instead of complementary slackness.
        #[arg(long)]
        blackbox: bool,
        #[arg(long, default_value_t = MAX_EXTRACT_DIM)]
        max_n: usize,
        #[arg(long = "C")]
        radius: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_vector(path: &Path) -> Result<Vec<f64>> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn one_based(pairs: &[(usize, usize)], n_left: usize) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(i, j)| (i + 1, j + n_left + 1)).collect()
}

fn solve(instance: &Path, prediction: Option<&Path>, long_step: bool, check: bool) -> Result<()> {
    let inst = MatchingInstance::load(instance)?;
    let start = match prediction {
        Some(path) => {
            let p_hat = read_vector(path)?;
            round_half_down(&inst.feasibility_projection(&p_hat)?.point)
        }
        None => inst.trivially_feasible_dual(),
    };
    let opts = DescentOptions {
        long_step,
        ..DescentOptions::default()
    };
    let result = steepest_descent(&inst, &start, &opts)?;
    let matching = inst.extract_primal(&result.point)?;
    let mut out = json!({
        "start": start,
        "iterations": result.trace.iterations,
        "optimum": result.value,
        "dual": result.point,
        "matching": one_based(&matching.pairs, inst.n_left()),
        "distance_travelled": result.distance_from(&start),
    });
    if check {
        let (_, best) = oracle::brute_force_matching(&inst)?;
        let mu = oracle::enumerate_mu_matching(&inst, &start)?;
        let local = oracle::brute_force_local_direction(&inst, &start)?;
        let fast = inst.local_opt_matching(&start)?;
        let checks = json!({
            "optimum_matches_brute_force": best == result.value,
            "iterations_within_mu_plus_one": result.trace.iterations as i64 <= mu + 1,
            "distance_equals_mu": long_step || result.distance_from(&start) == mu,
            "local_slope_matches": local.slope == fast.slope,
        });
        let ok = checks.as_object().is_some_and(|m| m.values().all(|v| v == true));
        out["check"] = checks;
        print_json(&out)?;
        if !ok {
            return Err(Error::Invariant("a brute-force cross-check failed".into()));
        }
        return Ok(());
    }
    print_json(&out)
}

fn mu(system: &Path, point: &Path, witness: Option<&Path>) -> Result<()> {
    let sys = InequalitySystem::load(system)?;
    let p_hat = read_vector(point)?;
    let witness = witness.map(read_vector).transpose()?;
    let eval = evaluate(&sys, &p_hat, witness.as_deref())?;
    print_json(&json!({
        "mu_bar": eval.value,
        "subgradient": eval.subgradient,
        "path": eval.path.edge_names(),
    }))
}

fn extract(instance: &Path, blackbox: bool, max_n: usize, radius: Option<i64>, out: Option<&Path>) -> Result<()> {
    let inst = MatchingInstance::load(instance)?;
    let mut info = json!({});
    let system = if blackbox {
        let limit = max_n.min(MAX_EXTRACT_DIM);
        if inst.n() > limit {
            return Err(Error::SizeLimit {
                what: "black-box extraction dimension",
                got: inst.n(),
                limit,
            });
        }
        let c = radius.unwrap_or_else(|| inst.default_radius());
        let oracle = BlackBoxOracle::new(&inst, c, inst.domain_system())?;
        let ex = extract_argmin_system(&oracle)?;
        info = json!({ "min_value": ex.min_value, "minimizations": ex.minimizations, "C": c });
        ex.system
    } else {
        let start = inst.trivially_feasible_dual();
        let p_star = steepest_descent(&inst, &start, &DescentOptions::default())?.point;
        inst.argmin_system_matching(&inst.extract_primal(&p_star)?)?
    };
    match out {
        Some(path) => {
            system.save(path)?;
            print_json(&info)
        }
        None => print_json(&serde_json::to_value(system.to_file())?),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            n,
            sigma,
            count,
            seed,
            out,
        } => {
            let paths = write_dataset(&out, &instance_stream(n, sigma, count, seed)?)?;
            print_json(&json!({ "written": paths.len(), "dir": out }))
        }
        Command::Solve {
            instance,
            prediction,
            long_step,
            check,
        } => solve(&instance, prediction.as_deref(), long_step, check),
        Command::Mu {
            system,
            point,
            witness,
        } => mu(&system, &point, witness.as_deref()),
        Command::Learn {
            dataset,
            loss,
            rho,
            radius,
            sigma,
            seed,
            long_step,
            timing,
            out,
        } => {
            let instances = load_dataset(&dataset)?;
            let cfg = ExperimentConfig {
                n: instances[0].n(),
                rounds: instances.len(),
                sigma,
                rho,
                method: loss.parse::<Method>()?,
                seed,
                radius,
                long_step,
                timing,
            };
            let result = run_online_experiment(&cfg, &instances)?;
            write_csv(&out, &result.records)?;
            print_json(&json!({
                "rounds": result.records.len(),
                "skipped": result.skipped.len(),
                "C": result.radius,
                "terminal_avg_iterations": result.terminal_avg_iterations(),
                "restoration": if cfg.method == Method::L1 { "greedy" } else { "projection" },
            }))
        }
        Command::Adversary {
            n,
            radius,
            rounds,
            seed,
            out,
        } => {
            let report = run_adversary(n, radius, rounds, seed)?;
            let mut w = csv::Writer::from_path(&out)?;
            for r in &report.records {
                w.serialize(r)?;
            }
            w.flush()?;
            print_json(&json!({
                "regret": report.regret,
                "bound": report.bound,
                "eta": report.eta,
                "comparator": "closed form",
            }))
        }
        Command::ExtractArgmin {
            instance,
            blackbox,
            max_n,
            radius,
            out,
        } => extract(&instance, blackbox, max_n, radius, out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
