//! Online learning of predictions with projected online gradient descent
//! over the box `[-C, +C]^V`, plus the anytime online-to-batch average.

use crate::error::{check_len, Result};
use crate::polyhedral::{self, InequalitySystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateMode {
    /// Constant step size.
    Fixed(f64),
    /// `rho · C √(2n) / √(Σ ‖z‖²)` with the current gradient included.
    Adaptive { rho: f64 },
}

/// Step size that attains the `C L √(nT)` regret bound for a known horizon.
pub fn horizon_rate(radius: f64, lipschitz: f64, n: usize, horizon: usize) -> f64 {
    radius / lipschitz * (n as f64 / horizon as f64).sqrt()
}

#[derive(Debug, Clone)]
pub struct LearnerState {
    iterate: Vec<f64>,
    iterate_sum: Vec<f64>,
    /// Number of iterates folded into the running average.
    t: usize,
    grad_sq_sum: f64,
    radius: f64,
    rate: RateMode,
}

impl LearnerState {
    /// Starts at the origin, which counts as the first iterate.
    pub fn new(n: usize, radius: f64, rate: RateMode) -> Self {
        assert!(radius > 0.0, "box radius must be positive");
        Self {
            iterate: vec![0.0; n],
            iterate_sum: vec![0.0; n],
            t: 1,
            grad_sq_sum: 0.0,
            radius,
            rate,
        }
    }

    pub fn dim(&self) -> usize {
        self.iterate.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn rounds(&self) -> usize {
        self.t
    }

    pub fn grad_sq_sum(&self) -> f64 {
        self.grad_sq_sum
    }

    /// The current OGD iterate.
    pub fn iterate(&self) -> &[f64] {
        &self.iterate
    }

    /// Mean of all iterates so far, including the current one.
    pub fn anytime_predict(&self) -> Vec<f64> {
        let t = self.t as f64;
        self.iterate_sum
            .iter()
            .zip(&self.iterate)
            .map(|(s, x)| (s + x) / t)
            .collect()
    }

    /// Step size to use with gradient `z`, or `None` when every gradient
    /// so far (including `z`) has been zero.
    pub fn step_size(&self, z: &[f64]) -> Option<f64> {
        match self.rate {
            RateMode::Fixed(eta) => Some(eta),
            RateMode::Adaptive { rho } => {
                let acc = self.grad_sq_sum + z.iter().map(|x| x * x).sum::<f64>();
                (acc > 0.0).then(|| {
                    rho * self.radius * (2.0 * self.dim() as f64).sqrt() / acc.sqrt()
                })
            }
        }
    }

    /// `p̂ <- clamp(p̂ - η z, -C, C)`; the new iterate joins the average.
    pub fn ogd_step(&mut self, z: &[f64]) -> Result<()> {
        check_len(self.dim(), z.len())?;
        let eta = self.step_size(z);
        self.grad_sq_sum += z.iter().map(|x| x * x).sum::<f64>();
        for (s, x) in self.iterate_sum.iter_mut().zip(&self.iterate) {
            *s += x;
        }
        if let Some(eta) = eta {
            let c = self.radius;
            for (x, g) in self.iterate.iter_mut().zip(z) {
                *x = (*x - eta * g).clamp(-c, c);
            }
        }
        self.t += 1;
        Ok(())
    }
}

/// Loss families for learning predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossKind {
    /// Distance to the optimal set.
    MuBar,
    /// `‖p* - p̂‖₁` for one fixed optimum.
    L1,
    /// `‖p* - p̂‖∞` for one fixed optimum.
    Linf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossEval {
    pub value: f64,
    pub subgradient: Vec<f64>,
}

/// Distance-to-optimal-set loss; `witness` must be a point of `sys`.
pub fn mu_bar_loss(sys: &InequalitySystem, witness: &[f64], p_hat: &[f64]) -> Result<LossEval> {
    let eval = polyhedral::evaluate(sys, p_hat, Some(witness))?;
    Ok(LossEval {
        value: eval.value,
        subgradient: eval.subgradient,
    })
}

pub fn l1_loss(p_star: &[f64], p_hat: &[f64]) -> Result<LossEval> {
    check_len(p_star.len(), p_hat.len())?;
    let mut value = 0.0;
    let subgradient = p_hat
        .iter()
        .zip(p_star)
        .map(|(a, b)| {
            let d = a - b;
            value += d.abs();
            sign(d)
        })
        .collect();
    Ok(LossEval { value, subgradient })
}

/// Ties among maximal coordinates go to the lowest index.
pub fn linf_loss(p_star: &[f64], p_hat: &[f64]) -> Result<LossEval> {
    check_len(p_star.len(), p_hat.len())?;
    let mut best = 0.0;
    let mut arg = None;
    for (i, (a, b)) in p_hat.iter().zip(p_star).enumerate() {
        let d = (a - b).abs();
        if d > best {
            best = d;
            arg = Some(i);
        }
    }
    let mut subgradient = vec![0.0; p_hat.len()];
    if let Some(i) = arg {
        subgradient[i] = sign(p_hat[i] - p_star[i]);
    }
    Ok(LossEval {
        value: best,
        subgradient,
    })
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `Σ played - Σ comparator`.
pub fn regret(played: &[f64], comparator: &[f64]) -> f64 {
    played.iter().sum::<f64>() - comparator.iter().sum::<f64>()
}

/// Approximately minimizes a convex `total_loss` over `[-C, C]^n` by cyclic
/// coordinate search (ternary search on each coordinate), starting from
/// `start`. Returns the point and its loss; the loss is an upper bound on
/// the true box minimum.
pub fn coordinate_descent_comparator<F>(
    total_loss: F,
    start: &[f64],
    radius: f64,
    sweeps: usize,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let mut x: Vec<f64> = start.iter().map(|v| v.clamp(-radius, radius)).collect();
    let mut best = total_loss(&x);
    for _ in 0..sweeps {
        let before = best;
        for i in 0..x.len() {
            let (mut lo, mut hi) = (-radius, radius);
            let mut probe = x.clone();
            let mut eval = |v: f64| {
                probe[i] = v;
                total_loss(&probe)
            };
            for _ in 0..60 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if eval(m1) <= eval(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let cand = 0.5 * (lo + hi);
            let val = eval(cand);
            if val < best {
                best = val;
                x[i] = cand;
            }
        }
        if before - best <= 1e-12 {
            break;
        }
    }
    (x, best)
}
