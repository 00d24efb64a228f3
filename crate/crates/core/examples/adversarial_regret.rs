//! Regret of fixed-rate online gradient descent on the adversarial sequence,
//! against the `C sqrt(2nT)` upper bound and the `C sqrt(nT)` scale.

use lconvex_warmstart::harness::run_adversary;

pub fn main() -> lconvex_warmstart::Result<()> {
    println!("  n   C     T   mean regret   bound   regret / C sqrt(nT)");
    for (n, c) in [(2, 1), (8, 4)] {
        for t in [64, 256, 1024] {
            let seeds = 20;
            let mut mean = 0.0;
            let mut bound = 0.0;
            for seed in 0..seeds {
                let rep = run_adversary(n, c, t, seed)?;
                mean += rep.regret / seeds as f64;
                bound = rep.bound;
            }
            let scale = c as f64 * ((n * t) as f64).sqrt();
            println!("{n:>3} {c:>3} {t:>5} {mean:>13.2} {bound:>7.1} {:>21.3}", mean / scale);
        }
    }
    Ok(())
}
