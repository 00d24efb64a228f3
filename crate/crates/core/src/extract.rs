//! Recovering an inequality system for `conv(argmin g)` from value queries
//! alone, by binary search over every bound constant. Each validity test is
//! a minimization of `g` restricted to a box plus one reversed inequality.

use std::cell::Cell;

use crate::descent::{steepest_descent, DescentOptions, Flavor, LnConvexOracle};
use crate::error::{Error, Result};
use crate::lattice::round_half_down;
use crate::polyhedral::{project_onto_system, InequalitySystem};

/// Largest dimension accepted by the extractor.
pub const MAX_EXTRACT_DIM: usize = 16;

/// A value oracle together with what the extractor needs to search:
/// a box radius `C` with `argmin g ∩ [-C, C]^V ≠ ∅`, and an inequality
/// system describing `conv(dom g)` so feasible starting points can be found.
pub struct BlackBoxOracle<G> {
    pub function: G,
    pub radius: i64,
    pub domain: InequalitySystem,
}

impl<G: LnConvexOracle> BlackBoxOracle<G> {
    pub fn new(function: G, radius: i64, domain: InequalitySystem) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        if domain.n() != function.dim() {
            return Err(Error::LengthMismatch {
                expected: function.dim(),
                got: domain.n(),
            });
        }
        Ok(Self {
            function,
            radius,
            domain,
        })
    }

    pub fn dim(&self) -> usize {
        self.function.dim()
    }

    fn search_box(&self) -> InequalitySystem {
        InequalitySystem::cube(self.dim(), -2 * self.radius, 2 * self.radius)
    }
}

/// One candidate inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `p_i >= alpha`
    Lower { i: usize, alpha: i64 },
    /// `p_i <= beta`
    Upper { i: usize, beta: i64 },
    /// `p_j - p_i <= gamma`
    Difference { i: usize, j: usize, gamma: i64 },
}

impl Bound {
    /// The integral complement `{p : not (bound)}` as one inequality.
    fn reversed(self, n: usize) -> InequalitySystem {
        let mut sys = InequalitySystem::new(n);
        match self {
            Bound::Lower { i, alpha } => sys.set_upper(i, Some(alpha - 1)),
            Bound::Upper { i, beta } => sys.set_lower(i, Some(beta + 1)),
            Bound::Difference { i, j, gamma } => sys.add_difference(j, i, -gamma - 1),
        }
        sys
    }
}

/// `g` restricted to a form-(9) region, as an L♮-convex oracle.
struct Restricted<'a, G> {
    g: &'a G,
    region: &'a InequalitySystem,
    cap: i64,
}

impl<G: LnConvexOracle> LnConvexOracle for Restricted<'_, G> {
    fn dim(&self) -> usize {
        self.g.dim()
    }
    fn flavor(&self) -> Flavor {
        Flavor::LNatural
    }
    fn value(&self, p: &[i64]) -> Option<i64> {
        if self.region.contains_int(p) {
            self.g.value(p)
        } else {
            None
        }
    }
    fn step_cap(&self) -> i64 {
        self.cap
    }
}

struct Extractor<'a, G> {
    oracle: &'a BlackBoxOracle<G>,
    minimizations: Cell<usize>,
}

impl<'a, G: LnConvexOracle> Extractor<'a, G> {
    fn new(oracle: &'a BlackBoxOracle<G>) -> Result<Self> {
        let n = oracle.dim();
        if n > MAX_EXTRACT_DIM {
            return Err(Error::SizeLimit {
                what: "black-box extraction dimension",
                got: n,
                limit: MAX_EXTRACT_DIM,
            });
        }
        Ok(Self {
            oracle,
            minimizations: Cell::new(0),
        })
    }

    /// Minimum of `g` over the search box intersected with `extra`;
    /// `None` when that region holds no point of the domain.
    fn restricted_minimum(&self, extra: Option<&InequalitySystem>) -> Result<Option<i64>> {
        self.minimizations.set(self.minimizations.get() + 1);
        let n = self.oracle.dim();
        let mut region = self.oracle.search_box();
        if let Some(extra) = extra {
            region = region.intersect(extra)?;
        }
        let feasible = region.intersect(&self.oracle.domain)?;
        let start = match project_onto_system(&feasible, &vec![0.0; n], None) {
            Ok(proj) => round_half_down(&proj.point),
            Err(Error::NegativeCycle) => return Ok(None),
            Err(e) => return Err(e),
        };
        let restricted = Restricted {
            g: &self.oracle.function,
            region: &region,
            cap: 8 * self.oracle.radius + 2,
        };
        if restricted.value(&start).is_none() {
            return Err(Error::Invariant(
                "domain system admits a point outside the effective domain".into(),
            ));
        }
        let result = steepest_descent(&restricted, &start, &DescentOptions::default())?;
        Ok(Some(result.value))
    }

    fn is_valid(&self, bound: Bound, min_value: i64) -> Result<bool> {
        let reversed = bound.reversed(self.oracle.dim());
        Ok(match self.restricted_minimum(Some(&reversed))? {
            None => true,
            Some(v) => v > min_value,
        })
    }

    /// Largest `x` in `[lo, hi]` with `valid(x)`, given `valid(lo)` and
    /// validity decreasing in `x`.
    fn largest_valid(&self, lo: i64, hi: i64, valid: impl Fn(i64) -> Result<bool>) -> Result<i64> {
        let (mut lo, mut hi) = (lo, hi + 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if valid(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Smallest `x` in `[lo, hi]` with `valid(x)`, given `valid(hi)` and
    /// validity increasing in `x`.
    fn smallest_valid(&self, lo: i64, hi: i64, valid: impl Fn(i64) -> Result<bool>) -> Result<i64> {
        let (mut lo, mut hi) = (lo - 1, hi);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if valid(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// Whether `bound` holds at every minimizer of `g` in the search box.
pub fn constraint_is_valid<G: LnConvexOracle>(oracle: &BlackBoxOracle<G>, bound: Bound) -> Result<bool> {
    let ex = Extractor::new(oracle)?;
    let min_value = ex.restricted_minimum(None)?.ok_or(Error::EmptyArgmin)?;
    ex.is_valid(bound, min_value)
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub system: InequalitySystem,
    pub min_value: i64,
    /// Restricted minimizations performed, including the unrestricted one.
    pub minimizations: usize,
}

/// Upper limit on restricted minimizations for dimension `n` and radius `c`.
pub fn minimization_budget(n: usize, c: i64) -> usize {
    let bits = |range: i64| (64 - (range as u64).leading_zeros()) as usize;
    1 + 2 * n * bits(4 * c + 1) + n * n.saturating_sub(1) * bits(8 * c + 1)
}

/// A system whose integral points in `[-2C, 2C]^V` are exactly the
/// minimizers of `g` there. Every returned bound is tight.
pub fn extract_argmin_system<G: LnConvexOracle>(oracle: &BlackBoxOracle<G>) -> Result<Extraction> {
    let ex = Extractor::new(oracle)?;
    let n = oracle.dim();
    let c = oracle.radius;
    let min_value = ex.restricted_minimum(None)?.ok_or(Error::EmptyArgmin)?;
    let mut system = InequalitySystem::new(n);

    for i in 0..n {
        let alpha = ex.largest_valid(-2 * c, 2 * c, |alpha| {
            ex.is_valid(Bound::Lower { i, alpha }, min_value)
        })?;
        system.set_lower(i, Some(alpha));
    }
    for i in 0..n {
        let beta = ex.smallest_valid(-2 * c, 2 * c, |beta| {
            ex.is_valid(Bound::Upper { i, beta }, min_value)
        })?;
        system.set_upper(i, Some(beta));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gamma = ex.smallest_valid(-4 * c, 4 * c, |gamma| {
                ex.is_valid(Bound::Difference { i, j, gamma }, min_value)
            })?;
            system.set_difference(i, j, Some(gamma));
        }
    }
    log::debug!(
        "extracted {} bounds with {} restricted minimizations",
        system.constraint_count(),
        ex.minimizations.get()
    );
    Ok(Extraction {
        system,
        min_value,
        minimizations: ex.minimizations.get(),
    })
}
