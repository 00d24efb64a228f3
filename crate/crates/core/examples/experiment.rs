//! Sweeps methods and learning-rate scales on generated matching streams and
//! prints the terminal cumulative-average iteration counts.
//!
//! `cargo run --release --example experiment -- [rounds] [seeds] [long]`
//!
//! Passing `long` as the third argument enables long steps.

use lconvex_warmstart::harness::{best_over_rho, run_grid, summarize, GridSpec, Method};

pub fn main() -> lconvex_warmstart::Result<()> {
    let mut args = std::env::args().skip(1);
    let rounds = args.next().map_or(300, |r| r.parse().expect("rounds"));
    let seeds = args.next().map_or(3, |s| s.parse().expect("seeds"));
    let long_step = args.next().as_deref() == Some("long");
    run(rounds, seeds, long_step)
}

pub fn run(rounds: usize, seeds: u64, long_step: bool) -> lconvex_warmstart::Result<()> {
    let mut spec = GridSpec::desk();
    spec.sigmas = vec![1, 5, 20];
    spec.rounds = rounds;
    spec.seeds = (0..seeds).collect();
    spec.long_step = long_step;
    let outputs = run_grid(&spec)?;
    let cells = summarize(&outputs);
    println!("sigma  method  rho     avg_iterations");
    for c in &cells {
        println!("{:<6} {:<7} {:<7} {:.3}", c.sigma, c.method, c.rho, c.mean_terminal_avg_iterations);
    }
    println!();
    for &sigma in &spec.sigmas {
        let best: Vec<String> = Method::ALL
            .iter()
            .filter_map(|&m| best_over_rho(&cells, m, sigma))
            .map(|c| format!("{}={:.3} (rho {})", c.method, c.mean_terminal_avg_iterations, c.rho))
            .collect();
        println!("sigma {sigma}: {}", best.join(", "));
    }
    Ok(())
}
