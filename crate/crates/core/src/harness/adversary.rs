use serde::Serialize;

use super::rng::SeededRng;
use crate::error::{Error, Result};
use crate::learner::{horizon_rate, mu_bar_loss, regret, LearnerState, RateMode};
use crate::polyhedral::InequalitySystem;

#[derive(Debug, Clone)]
pub struct AdversarialRound {
    /// 0-based coordinate carrying `+3 sigma C`; its partner is `index + n/2`.
    pub index: usize,
    pub sign: i64,
    pub p_star: Vec<i64>,
    pub system: InequalitySystem,
}

/// Round `t` (1-based) targets coordinate `t mod (n/2)` with a random sign
/// and has the single optimum `p*_t` with entries `+3 sigma C` and
/// `-3 sigma C` at that coordinate and its partner.
pub fn adversarial_sequence(n: usize, c: i64, rounds: usize, seed: u64) -> Result<Vec<AdversarialRound>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidInput(format!("n must be positive and even, got {n}")));
    }
    if c < 1 {
        return Err(Error::InvalidInput(format!("C must be at least 1, got {c}")));
    }
    let half = n / 2;
    let mut rng = SeededRng::new(seed);
    Ok((1..=rounds)
        .map(|t| {
            let index = t % half;
            let sign = rng.sign();
            let mut p_star = vec![0; n];
            p_star[index] = 3 * sign * c;
            p_star[index + half] = -3 * sign * c;
            AdversarialRound {
                index,
                sign,
                system: InequalitySystem::singleton(&p_star),
                p_star,
            }
        })
        .collect())
}

/// `6C + sign (p̂_{i+n/2} - p̂_i)`, valid for `p̂` in the box.
pub fn closed_form_loss(round: &AdversarialRound, c: i64, p_hat: &[f64]) -> f64 {
    let half = p_hat.len() / 2;
    6.0 * c as f64 + round.sign as f64 * (p_hat[round.index + half] - p_hat[round.index])
}

/// Best fixed prediction in hindsight: with `X_i` the signed count of
/// rounds targeting `i`, set `p̂_i = sign(X_i) C` and the partner to the
/// negative.
pub fn construction_comparator(rounds: &[AdversarialRound], n: usize, c: i64) -> Vec<f64> {
    let half = n / 2;
    let mut x = vec![0i64; half];
    for r in rounds {
        x[r.index] += r.sign;
    }
    let mut p = vec![0.0; n];
    for (i, &xi) in x.iter().enumerate() {
        p[i] = xi.signum() as f64 * c as f64;
        p[i + half] = -p[i];
    }
    p
}

#[derive(Debug, Clone, Serialize)]
pub struct AdversaryRecord {
    pub t: usize,
    pub sign: i64,
    pub loss: f64,
    pub comparator_loss: f64,
    pub regret: f64,
}

#[derive(Debug, Clone)]
pub struct AdversaryReport {
    pub records: Vec<AdversaryRecord>,
    pub regret: f64,
    /// `C sqrt(2 n T)`.
    pub bound: f64,
    pub eta: f64,
}

/// Fixed-rate OGD on the adversarial sequence, scored against the
/// construction's comparator.
pub fn run_adversary(n: usize, c: i64, rounds: usize, seed: u64) -> Result<AdversaryReport> {
    let seq = adversarial_sequence(n, c, rounds, seed)?;
    let radius = c as f64;
    let eta = horizon_rate(radius, 2f64.sqrt(), n, rounds);
    let mut learner = LearnerState::new(n, radius, RateMode::Fixed(eta));
    let comparator = construction_comparator(&seq, n, c);

    let mut played = Vec::with_capacity(rounds);
    let mut best = Vec::with_capacity(rounds);
    let mut records = Vec::with_capacity(rounds);
    for (t, round) in seq.iter().enumerate() {
        let witness: Vec<f64> = round.p_star.iter().map(|&x| x as f64).collect();
        let eval = mu_bar_loss(&round.system, &witness, learner.iterate())?;
        let cmp = mu_bar_loss(&round.system, &witness, &comparator)?.value;
        played.push(eval.value);
        best.push(cmp);
        records.push(AdversaryRecord {
            t: t + 1,
            sign: round.sign,
            loss: eval.value,
            comparator_loss: cmp,
            regret: regret(&played, &best),
        });
        learner.ogd_step(&eval.subgradient)?;
    }
    Ok(AdversaryReport {
        regret: regret(&played, &best),
        bound: radius * (2.0 * n as f64 * rounds as f64).sqrt(),
        records,
        eta,
    })
}
