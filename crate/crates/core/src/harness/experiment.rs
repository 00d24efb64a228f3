use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{instance_stream, max_weight};
use crate::descent::{steepest_descent, DescentOptions};
use crate::error::{Error, Result};
use crate::lattice::{round_half_down, to_real};
use crate::learner::{l1_loss, linf_loss, mu_bar_loss, LearnerState, LossEval, RateMode};
use crate::matching::MatchingInstance;
use crate::polyhedral::mu_bar;

/// How predictions are learned, or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    MuBar,
    L1,
    Linf,
    /// Always predicts zero.
    Cold,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::MuBar, Method::L1, Method::Linf, Method::Cold];

    pub fn name(self) -> &'static str {
        match self {
            Method::MuBar => "mu",
            Method::L1 => "l1",
            Method::Linf => "linf",
            Method::Cold => "cold",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mu" | "mu_bar" => Method::MuBar,
            "l1" => Method::L1,
            "linf" => Method::Linf,
            "cold" => Method::Cold,
            _ => return Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub rounds: usize,
    pub sigma: u32,
    pub rho: f64,
    pub method: Method,
    pub seed: u64,
    /// Box radius; `n W` when unset, `W` the largest weight in the stream.
    pub radius: Option<f64>,
    pub long_step: bool,
    /// Records wall time per round; off gives byte-reproducible output.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 10,
            rounds: 300,
            sigma: 1,
            rho: 0.1,
            method: Method::MuBar,
            seed: 0,
            radius: None,
            long_step: false,
            timing: false,
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidInput("at least one round is required".into()));
        }
        if self.n == 0 || self.n % 2 == 1 {
            return Err(Error::InvalidInput(format!("n must be positive and even, got {}", self.n)));
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::InvalidInput(format!("rho must be positive, got {}", self.rho)));
        }
        if let Some(c) = self.radius {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidInput(format!("C must be positive, got {c}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundRecord {
    pub t: usize,
    pub method: &'static str,
    pub rho: f64,
    pub sigma: u32,
    pub seed: u64,
    pub loss: f64,
    pub iterations: usize,
    pub mu_bar: f64,
    pub cum_avg_iterations: f64,
    pub wall_us: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub radius: f64,
    pub records: Vec<RoundRecord>,
    /// Rounds that failed, with the error text.
    pub skipped: Vec<(usize, String)>,
}

impl ExperimentOutput {
    /// Cumulative-average iterations after the last completed round.
    pub fn terminal_avg_iterations(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.cum_avg_iterations)
    }
}

/// Dual feasibility restored by raising `s`: every violated
/// `s_i - t_j >= w_ij`, in edge order, lifts `s_i` by the violation.
pub fn greedy_restore(inst: &MatchingInstance, p: &[i64]) -> Vec<i64> {
    let mut p = p.to_vec();
    loop {
        let mut changed = false;
        for e in inst.edges() {
            let slack = inst.slack(e, &p);
            if slack < 0 {
                p[e.left] -= slack;
                changed = true;
            }
        }
        if !changed {
            return p;
        }
    }
}

struct RoundOutcome {
    loss: LossEval,
    iterations: usize,
    mu_bar: f64,
}

fn play_round(
    cfg: &ExperimentConfig,
    inst: &MatchingInstance,
    p_hat: &[f64],
    opts: &DescentOptions,
) -> Result<RoundOutcome> {
    let start = match cfg.method {
        Method::L1 => greedy_restore(inst, &round_half_down(p_hat)),
        _ => round_half_down(&inst.feasibility_projection(p_hat)?.point),
    };
    let result = steepest_descent(inst, &start, opts)?;
    let p_star = result.point;
    let witness = to_real(&p_star);
    let m_star = inst.extract_primal(&p_star)?;
    let optimal = inst.argmin_system_matching(&m_star)?;
    let distance = mu_bar(&optimal, p_hat, Some(&witness))?;
    let loss = match cfg.method {
        Method::MuBar => mu_bar_loss(&optimal, &witness, p_hat)?,
        Method::L1 => l1_loss(&witness, p_hat)?,
        Method::Linf => linf_loss(&witness, p_hat)?,
        Method::Cold => LossEval {
            value: distance,
            subgradient: vec![0.0; p_hat.len()],
        },
    };
    Ok(RoundOutcome {
        loss,
        iterations: result.trace.iterations,
        mu_bar: distance,
    })
}

/// Online loop over `instances`: predict with the anytime average, warm
/// start the solver, observe the round's loss and update the learner.
pub fn run_online_experiment(cfg: &ExperimentConfig, instances: &[MatchingInstance]) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let n = instances
        .first()
        .ok_or_else(|| Error::InvalidInput("empty instance stream".into()))?
        .n();
    if instances.iter().any(|i| i.n() != n) {
        return Err(Error::InvalidInput("instances differ in size".into()));
    }
    let radius = cfg
        .radius
        .unwrap_or_else(|| (n as i64 * max_weight(instances)) as f64);
    let mut learner = LearnerState::new(n, radius, RateMode::Adaptive { rho: cfg.rho });
    let opts = DescentOptions {
        long_step: cfg.long_step,
        ..DescentOptions::default()
    };

    let mut records = Vec::with_capacity(cfg.rounds);
    let mut skipped = Vec::new();
    let mut total_iterations = 0usize;
    for (t, inst) in instances.iter().take(cfg.rounds).enumerate() {
        let clock = Instant::now();
        let p_hat = match cfg.method {
            Method::Cold => vec![0.0; n],
            _ => learner.anytime_predict(),
        };
        let outcome = match play_round(cfg, inst, &p_hat, &opts) {
            Ok(o) => o,
            Err(e) => {
                log::warn!("round {} skipped: {e}", t + 1);
                skipped.push((t + 1, e.to_string()));
                continue;
            }
        };
        if cfg.method != Method::Cold {
            learner.ogd_step(&outcome.loss.subgradient)?;
        }
        total_iterations += outcome.iterations;
        let done = records.len() + 1;
        records.push(RoundRecord {
            t: t + 1,
            method: cfg.method.name(),
            rho: cfg.rho,
            sigma: cfg.sigma,
            seed: cfg.seed,
            loss: outcome.loss.value,
            iterations: outcome.iterations,
            mu_bar: outcome.mu_bar,
            cum_avg_iterations: total_iterations as f64 / done as f64,
            wall_us: if cfg.timing {
                clock.elapsed().as_micros() as u64
            } else {
                0
            },
        });
    }
    Ok(ExperimentOutput {
        config: cfg.clone(),
        radius,
        records,
        skipped,
    })
}

/// Generates the config's own instance stream and runs it.
pub fn run_generated(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let instances = instance_stream(cfg.n, cfg.sigma, cfg.rounds, cfg.seed)?;
    run_online_experiment(cfg, &instances)
}

pub fn write_csv(path: impl AsRef<Path>, records: &[RoundRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[RoundRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// A sweep over methods, learning-rate scales, noise levels and seeds.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub n: usize,
    pub rounds: usize,
    pub methods: Vec<Method>,
    pub rhos: Vec<f64>,
    pub sigmas: Vec<u32>,
    pub seeds: Vec<u64>,
    pub long_step: bool,
}

impl GridSpec {
    /// Desk-scale defaults: n = 10, 300 rounds, 3 seeds.
    pub fn desk() -> Self {
        Self {
            n: 10,
            rounds: 300,
            methods: Method::ALL.to_vec(),
            rhos: vec![0.01, 0.1, 1.0, 10.0],
            sigmas: vec![1, 5, 10, 20],
            seeds: vec![0, 1, 2],
            long_step: false,
        }
    }

    /// n = 10, 1000 rounds, 10 seeds.
    pub fn full() -> Self {
        Self {
            rounds: 1000,
            seeds: (0..10).collect(),
            ..Self::desk()
        }
    }

    pub fn configs(&self) -> Vec<ExperimentConfig> {
        let mut out = Vec::new();
        for &sigma in &self.sigmas {
            for &method in &self.methods {
                for &rho in &self.rhos {
                    for &seed in &self.seeds {
                        out.push(ExperimentConfig {
                            n: self.n,
                            rounds: self.rounds,
                            sigma,
                            rho,
                            method,
                            seed,
                            radius: None,
                            long_step: self.long_step,
                            timing: false,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Mean terminal cumulative-average iterations of one (method, ρ, σ) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub method: &'static str,
    pub rho: f64,
    pub sigma: u32,
    pub mean_terminal_avg_iterations: f64,
    pub seeds: usize,
}

/// Runs every grid cell in parallel; each cell owns its learner.
pub fn run_grid(spec: &GridSpec) -> Result<Vec<ExperimentOutput>> {
    spec.configs().par_iter().map(run_generated).collect()
}

pub fn summarize(outputs: &[ExperimentOutput]) -> Vec<CellSummary> {
    let mut cells: Vec<CellSummary> = Vec::new();
    for out in outputs {
        let c = &out.config;
        let v = out.terminal_avg_iterations();
        match cells
            .iter_mut()
            .find(|s| s.method == c.method.name() && s.rho == c.rho && s.sigma == c.sigma)
        {
            Some(s) => {
                s.mean_terminal_avg_iterations += v;
                s.seeds += 1;
            }
            None => cells.push(CellSummary {
                method: c.method.name(),
                rho: c.rho,
                sigma: c.sigma,
                mean_terminal_avg_iterations: v,
                seeds: 1,
            }),
        }
    }
    for s in &mut cells {
        s.mean_terminal_avg_iterations /= s.seeds as f64;
    }
    cells
}

/// Best (lowest) mean over the ρ grid for each method at noise `sigma`.
pub fn best_over_rho(cells: &[CellSummary], method: Method, sigma: u32) -> Option<&CellSummary> {
    cells
        .iter()
        .filter(|s| s.method == method.name() && s.sigma == sigma)
        .min_by(|a, b| a.mean_terminal_avg_iterations.total_cmp(&b.mean_terminal_avg_iterations))
}
