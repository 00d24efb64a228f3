//! Learning predictions online for a stream of random matching instances.

use lconvex_warmstart::harness::{instance_stream, run_online_experiment, ExperimentConfig, Method};

pub fn main() -> lconvex_warmstart::Result<()> {
    let rounds = 150;
    let instances = instance_stream(10, 1, rounds, 3)?;
    for method in Method::ALL {
        let cfg = ExperimentConfig {
            rounds,
            sigma: 1,
            rho: 0.1,
            method,
            seed: 3,
            ..ExperimentConfig::default()
        };
        let out = run_online_experiment(&cfg, &instances)?;
        let checkpoints: Vec<String> = [10, 50, 100, 150]
            .iter()
            .map(|&t| format!("t={t}: {:.2}", out.records[t - 1].cum_avg_iterations))
            .collect();
        println!("{method:<5} C={} {}", out.radius, checkpoints.join("  "));
    }
    Ok(())
}
