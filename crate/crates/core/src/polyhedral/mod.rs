//! Distance from a real point to a polyhedron of box and difference
//! constraints, measured in the l±∞ norm, together with subgradients of that
//! distance and l±∞ projections onto the polyhedron.

mod graph;
mod system;

pub use graph::{AuxEdge, AuxVertex, AuxiliaryGraph, PathWitness, Potential, TIE_TOLERANCE};
pub use system::{InequalitySystem, SystemFile};

use crate::error::{check_len, Error, Result};

/// Tolerance used when checking that a witness point satisfies a system.
pub const WITNESS_TOLERANCE: f64 = 1e-9;

pub fn build_auxiliary_graph(sys: &InequalitySystem, p_hat: &[f64]) -> Result<AuxiliaryGraph> {
    AuxiliaryGraph::build(sys, p_hat)
}

/// Potential `q = p* - p̂` extended to the anchor (0), source (max over the
/// anchor and coordinates) and sink (min over the same).
pub fn potential_from_point(
    sys: &InequalitySystem,
    witness: &[f64],
    p_hat: &[f64],
) -> Result<Potential> {
    let n = sys.n();
    check_len(n, witness.len())?;
    check_len(n, p_hat.len())?;
    let violation = sys.max_violation(witness)?;
    if violation > WITNESS_TOLERANCE {
        return Err(Error::InvalidPotential(format!(
            "witness violates the system by {violation}"
        )));
    }
    let mut values = Vec::with_capacity(n + 3);
    values.extend(witness.iter().zip(p_hat).map(|(a, b)| a - b));
    values.push(0.0);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    values.push(hi);
    values.push(lo);
    Ok(Potential { values })
}

/// Everything one shortest-path solve tells about `p̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceEval {
    pub value: f64,
    pub subgradient: Vec<f64>,
    pub path: PathWitness,
}

/// Computes the distance and a subgradient at `p_hat`.
///
/// With a witness point inside the system the search is Dijkstra on
/// potential-reweighted edges; otherwise it is label-correcting.
pub fn evaluate(
    sys: &InequalitySystem,
    p_hat: &[f64],
    witness: Option<&[f64]>,
) -> Result<DistanceEval> {
    let graph = AuxiliaryGraph::build(sys, p_hat)?;
    let potential = witness
        .map(|w| potential_from_point(sys, w, p_hat))
        .transpose()?;
    let path = graph.shortest_path(potential.as_ref())?;
    let subgradient = subgradient_from_path(sys.n(), &path);
    Ok(DistanceEval {
        value: (-path.weight).max(0.0),
        subgradient,
        path,
    })
}

/// The l±∞ distance from `p_hat` to the system.
pub fn mu_bar(sys: &InequalitySystem, p_hat: &[f64], witness: Option<&[f64]>) -> Result<f64> {
    evaluate(sys, p_hat, witness).map(|e| e.value)
}

pub fn mu_bar_subgradient(
    sys: &InequalitySystem,
    p_hat: &[f64],
    witness: Option<&[f64]>,
) -> Result<Vec<f64>> {
    evaluate(sys, p_hat, witness).map(|e| e.subgradient)
}

/// `-1` at the coordinate entered from the source, `+1` at the one leaving
/// to the sink; anchor endpoints contribute nothing.
pub fn subgradient_from_path(n: usize, path: &PathWitness) -> Vec<f64> {
    let mut z = vec![0.0; n];
    let (entry, exit) = (path.entry(), path.exit());
    if entry == exit {
        if path.weight < 0.0 {
            log::warn!("negative two-edge path through {entry}; using zero subgradient");
        }
        return z;
    }
    if let AuxVertex::Var(i) = entry {
        z[i] -= 1.0;
    }
    if let AuxVertex::Var(j) = exit {
        z[j] += 1.0;
    }
    z
}

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub point: Vec<f64>,
    pub distance: f64,
}

/// An l±∞-closest point of the system to `p_hat`.
///
/// Shifts `p_hat` by the shortest-path distances from the source, normalized
/// so the anchor sits at zero. Integral `p_hat` gives an integral result.
pub fn project_onto_system(
    sys: &InequalitySystem,
    p_hat: &[f64],
    witness: Option<&[f64]>,
) -> Result<Projection> {
    let graph = AuxiliaryGraph::build(sys, p_hat)?;
    let potential = witness
        .map(|w| potential_from_point(sys, w, p_hat))
        .transpose()?;
    let dist = graph.distances(potential.as_ref())?;
    let offset = dist[graph.anchor()];
    let point: Vec<f64> = p_hat
        .iter()
        .zip(&dist)
        .map(|(p, d)| p + (d - offset))
        .collect();
    let distance = (-dist[graph.sink()]).max(0.0);
    Ok(Projection { point, distance })
}

/// Whether the system has at least one real (equivalently integral) point.
pub fn is_nonempty(sys: &InequalitySystem) -> bool {
    AuxiliaryGraph::build(sys, &vec![0.0; sys.n()])
        .map(|g| g.has_no_negative_cycle())
        .unwrap_or(false)
}
