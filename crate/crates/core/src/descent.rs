//! Steepest descent for L-convex and L♮-convex functions on the integer lattice.
//!
//! A function is supplied through [`LnConvexOracle`]: a value oracle plus a
//! local optimizer over the neighborhood of unit directions. Problem-specific
//! oracles (see [`crate::matching`]) override the local optimizer and the
//! long-step computation with closed forms; everything else falls back to
//! exhaustive enumeration and value-query search.

use crate::error::{Error, Result};
use crate::lattice::linf_pm_dist_int;

/// Which neighborhood the descent explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Directions in `{0,+1}^V`.
    L,
    /// Directions in `{0,+1}^V ∪ {0,-1}^V`.
    LNatural,
}

/// Largest dimension the exhaustive local optimizer will enumerate.
pub const EXHAUSTIVE_MAX_DIM: usize = 20;

/// Step cap used when neither the caller nor the oracle supplies one.
pub const DEFAULT_STEP_CAP: i64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalStep {
    /// Entries in `{-1, 0, +1}`; all of one sign.
    pub direction: Vec<i64>,
    /// `g(p + d) - g(p)`.
    pub slope: i64,
}

pub trait LnConvexOracle {
    fn dim(&self) -> usize;

    fn flavor(&self) -> Flavor;

    /// `None` encodes `+∞` (the point is outside the effective domain).
    fn value(&self, p: &[i64]) -> Option<i64>;

    /// A steepest direction at `p`, which must lie in the effective domain.
    fn local_direction(&self, p: &[i64]) -> LocalStep {
        exhaustive_local_direction(self, p)
    }

    /// Closed-form long step, when the oracle has one. `None` means the
    /// generic value-query search is used.
    fn long_step_hint(&self, _p: &[i64], _d: &[i64]) -> Option<Result<i64>> {
        None
    }

    /// Ceiling on the generic long-step search; exceeding it reports `Unbounded`.
    fn step_cap(&self) -> i64 {
        DEFAULT_STEP_CAP
    }
}

impl<G: LnConvexOracle + ?Sized> LnConvexOracle for &G {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn flavor(&self) -> Flavor {
        (**self).flavor()
    }
    fn value(&self, p: &[i64]) -> Option<i64> {
        (**self).value(p)
    }
    fn local_direction(&self, p: &[i64]) -> LocalStep {
        (**self).local_direction(p)
    }
    fn long_step_hint(&self, p: &[i64], d: &[i64]) -> Option<Result<i64>> {
        (**self).long_step_hint(p, d)
    }
    fn step_cap(&self) -> i64 {
        (**self).step_cap()
    }
}

pub(crate) fn add_scaled(p: &[i64], d: &[i64], lambda: i64) -> Vec<i64> {
    p.iter().zip(d).map(|(a, b)| a + lambda * b).collect()
}

/// Minimizes `g(p + d)` over the whole neighborhood by enumeration.
///
/// Ties go to the direction whose sorted support is lexicographically
/// smallest; for L♮ the `{0,+1}` family wins ties against `{0,-1}`.
///
/// # Panics
///
/// If `g.dim()` exceeds [`EXHAUSTIVE_MAX_DIM`] or `p` is outside the domain.
pub fn exhaustive_local_direction<G: LnConvexOracle + ?Sized>(g: &G, p: &[i64]) -> LocalStep {
    let n = g.dim();
    assert!(
        n <= EXHAUSTIVE_MAX_DIM,
        "exhaustive local search limited to dimension {EXHAUSTIVE_MAX_DIM}"
    );
    let base = g
        .value(p)
        .expect("local direction requested outside the effective domain");
    let signs: &[i64] = match g.flavor() {
        Flavor::L => &[1],
        Flavor::LNatural => &[1, -1],
    };

    let mut best: Option<(i64, Vec<usize>, i64)> = None;
    let mut point = p.to_vec();
    for &sign in signs {
        for mask in 0u64..(1u64 << n) {
            let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            for &i in &support {
                point[i] += sign;
            }
            let value = g.value(&point);
            for &i in &support {
                point[i] -= sign;
            }
            let Some(value) = value else { continue };
            // key: (value, family, support) with the +1 family first
            let better = match &best {
                None => true,
                Some((bv, bs, bsign)) => {
                    (value, -sign, &support) < (*bv, -*bsign, bs)
                }
            };
            if better {
                best = Some((value, support, sign));
            }
        }
    }
    let (value, support, sign) = best.expect("zero direction is always feasible");
    let mut direction = vec![0; n];
    for i in support {
        direction[i] = sign;
    }
    LocalStep {
        direction,
        slope: value - base,
    }
}

/// Largest `λ` with `g(p + λd) - g(p) = λ·(g(p + d) - g(p))`.
///
/// With `unit_step` set this is always 1. Otherwise the oracle's closed form
/// is used when available, and a doubling-then-bisection search over value
/// queries otherwise, capped at `cap`.
pub fn long_step_length<G: LnConvexOracle + ?Sized>(
    g: &G,
    p: &[i64],
    d: &[i64],
    unit_step: bool,
    cap: i64,
) -> Result<i64> {
    if unit_step {
        return Ok(1);
    }
    if let Some(hint) = g.long_step_hint(p, d) {
        return hint;
    }
    let base = g.value(p).ok_or(Error::InfeasibleStart)?;
    let slope = g
        .value(&add_scaled(p, d, 1))
        .ok_or_else(|| Error::Invariant("direction leaves the domain at unit step".into()))?
        - base;
    if slope >= 0 {
        return Err(Error::InvalidInput(format!(
            "long step requires a negative slope, got {slope}"
        )));
    }
    let additive = |lambda: i64| g.value(&add_scaled(p, d, lambda)) == Some(base + lambda * slope);

    let mut lo = 1;
    let mut hi = 2;
    loop {
        if hi > cap {
            if additive(cap) {
                return Err(Error::Unbounded);
            }
            hi = cap;
            break;
        }
        if !additive(hi) {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    // additive(lo) holds, additive(hi) fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if additive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Debug, Clone)]
pub struct DescentOptions {
    pub long_step: bool,
    /// Overrides the oracle's step cap for generic long steps.
    pub step_cap: Option<i64>,
    pub max_iterations: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            long_step: true,
            step_cap: None,
            max_iterations: 1_000_000,
        }
    }
}

impl DescentOptions {
    pub fn unit_step() -> Self {
        Self {
            long_step: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    /// Point before the move.
    pub point: Vec<i64>,
    pub direction: Vec<i64>,
    pub slope: i64,
    pub step_length: i64,
}

#[derive(Debug, Clone, Default)]
pub struct DescentTrace {
    /// One entry per move; the terminal zero-slope check is not recorded.
    pub steps: Vec<DescentStep>,
    /// Moves plus the terminal check.
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct DescentResult {
    pub point: Vec<i64>,
    pub value: i64,
    pub trace: DescentTrace,
}

impl DescentResult {
    /// l±∞ distance travelled from the start.
    pub fn distance_from(&self, p0: &[i64]) -> i64 {
        linf_pm_dist_int(&self.point, p0)
    }
}

/// Runs steepest descent from `p0` until the steepest slope is zero.
pub fn steepest_descent<G: LnConvexOracle + ?Sized>(
    g: &G,
    p0: &[i64],
    opts: &DescentOptions,
) -> Result<DescentResult> {
    crate::error::check_len(g.dim(), p0.len())?;
    let mut value = g.value(p0).ok_or(Error::InfeasibleStart)?;
    let cap = opts.step_cap.unwrap_or_else(|| g.step_cap());
    let mut p = p0.to_vec();
    let mut trace = DescentTrace::default();

    loop {
        trace.iterations += 1;
        let LocalStep { direction, slope } = g.local_direction(&p);
        if slope == 0 {
            return Ok(DescentResult {
                point: p,
                value,
                trace,
            });
        }
        if slope > 0 {
            return Err(Error::Invariant(format!(
                "local optimizer returned a positive slope {slope}"
            )));
        }
        if trace.iterations >= opts.max_iterations {
            return Err(Error::Invariant(format!(
                "no convergence within {} iterations",
                opts.max_iterations
            )));
        }
        let step_length = long_step_length(g, &p, &direction, !opts.long_step, cap)?;
        let next = add_scaled(&p, &direction, step_length);
        let next_value = g
            .value(&next)
            .ok_or_else(|| Error::Invariant("step left the effective domain".into()))?;
        if next_value != value + step_length * slope {
            return Err(Error::Invariant(format!(
                "step of length {step_length} broke slope additivity"
            )));
        }
        trace.steps.push(DescentStep {
            point: std::mem::replace(&mut p, next),
            direction,
            slope,
            step_length,
        });
        value = next_value;
    }
}

/// A function given by a closure, for tests and small experiments.
pub struct FnOracle<F> {
    pub dim: usize,
    pub flavor: Flavor,
    pub f: F,
}

impl<F: Fn(&[i64]) -> Option<i64>> LnConvexOracle for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn flavor(&self) -> Flavor {
        self.flavor
    }
    fn value(&self, p: &[i64]) -> Option<i64> {
        (self.f)(p)
    }
}
