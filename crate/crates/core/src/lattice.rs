//! Vector primitives over the ground set `V`.
//!
//! Real vectors are plain `f64` slices (predictions live here); integer
//! vectors are `i64` slices (dual points, iterates of the solver).

use crate::error::{check_len, Result};

/// The l±∞ norm: largest positive entry plus largest negative magnitude.
///
/// Both maxima are clipped at zero, so a vector with only nonnegative
/// entries has norm `max_i v_i`.
pub fn linf_pm_norm(v: &[f64]) -> f64 {
    let pos = v.iter().fold(0.0_f64, |acc, &x| acc.max(x));
    let neg = v.iter().fold(0.0_f64, |acc, &x| acc.max(-x));
    pos + neg
}

/// Integer version of [`linf_pm_norm`].
pub fn linf_pm_norm_int(v: &[i64]) -> i64 {
    let pos = v.iter().copied().fold(0, i64::max);
    let neg = v.iter().fold(0, |acc, &x| acc.max(-x));
    pos + neg
}

/// l±∞ distance between two real vectors.
pub fn linf_pm_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut pos = 0.0_f64;
    let mut neg = 0.0_f64;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        pos = pos.max(d);
        neg = neg.max(-d);
    }
    pos + neg
}

/// l±∞ distance between two integer vectors.
pub fn linf_pm_dist_int(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let mut pos = 0;
    let mut neg = 0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        pos = pos.max(d);
        neg = neg.max(-d);
    }
    pos + neg
}

/// Nearest-integer rounding where an exact `.5` fractional part goes down.
///
/// `1.5 -> 1`, `2.5 -> 2`, `-0.5 -> -1`.
pub fn round_half_down_scalar(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

pub fn round_half_down(v: &[f64]) -> Vec<i64> {
    v.iter().map(|&x| round_half_down_scalar(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOps {
    pub join: Vec<i64>,
    pub meet: Vec<i64>,
    pub ceil_mid: Vec<i64>,
    pub floor_mid: Vec<i64>,
}

/// Element-wise max, min, and the two rounded midpoints of `p` and `q`.
pub fn lattice_ops(p: &[i64], q: &[i64]) -> Result<LatticeOps> {
    check_len(p.len(), q.len())?;
    let n = p.len();
    let mut ops = LatticeOps {
        join: Vec::with_capacity(n),
        meet: Vec::with_capacity(n),
        ceil_mid: Vec::with_capacity(n),
        floor_mid: Vec::with_capacity(n),
    };
    for (&a, &b) in p.iter().zip(q) {
        let sum = a + b;
        let lo = sum.div_euclid(2);
        ops.join.push(a.max(b));
        ops.meet.push(a.min(b));
        ops.floor_mid.push(lo);
        ops.ceil_mid.push(sum - lo);
    }
    Ok(ops)
}

pub fn to_real(p: &[i64]) -> Vec<f64> {
    p.iter().map(|&x| x as f64).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
