//! Weighted perfect bipartite matching and its dual as an L-convex function.
//!
//! The dual variables are stored as one vector over `V = L ∪ R`: entries
//! `0..n_left` are the `s` values, entries `n_left..n` the `t` values. The
//! dual minimizes `Σ s_i - Σ t_j` subject to `s_i - t_j >= w_ij` on every
//! edge.

mod hopcroft_karp;

pub use hopcroft_karp::{hopcroft_karp, BipartiteGraph, MaxMatching};

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::descent::{Flavor, LnConvexOracle, LocalStep};
use crate::error::{check_len, Error, Result};
use crate::lattice::to_real;
use crate::polyhedral::{project_onto_system, InequalitySystem, Projection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// Index into `L`, 0-based.
    pub left: usize,
    /// Index into `R`, 0-based.
    pub right: usize,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingInstance {
    n_left: usize,
    edges: Vec<Edge>,
    weights: Vec<Option<i64>>,
}

impl MatchingInstance {
    /// Validates and builds an instance with `n_left = n_right = n_side`.
    ///
    /// Rejects parallel edges, out-of-range endpoints and graphs without a
    /// perfect matching (reporting a Hall-violating set).
    pub fn new(n_side: usize, edges: Vec<Edge>) -> Result<Self> {
        if n_side == 0 {
            return Err(Error::InvalidInput("sides must be non-empty".into()));
        }
        let mut weights = vec![None; n_side * n_side];
        for e in &edges {
            if e.left >= n_side || e.right >= n_side {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) out of range",
                    e.left, e.right
                )));
            }
            let slot = &mut weights[e.left * n_side + e.right];
            if slot.is_some() {
                return Err(Error::InvalidInput(format!(
                    "parallel edge ({}, {})",
                    e.left, e.right
                )));
            }
            *slot = Some(e.weight);
        }
        let inst = Self {
            n_left: n_side,
            edges,
            weights,
        };
        inst.check_perfect_matching()?;
        Ok(inst)
    }

    fn check_perfect_matching(&self) -> Result<()> {
        let g = self.graph_where(|_| true);
        let m = hopcroft_karp(&g);
        if m.size == self.n_left {
            return Ok(());
        }
        let (left, right) = m.reach_from_unmatched_left(&g);
        let set: Vec<usize> = (0..self.n_left).filter(|&i| left[i]).map(|i| i + 1).collect();
        let nbrs = right.iter().filter(|&&b| b).count();
        Err(Error::NoPerfectMatching(format!(
            "left vertices {set:?} have only {nbrs} neighbors (Hall condition fails)"
        )))
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_left
    }

    /// `|V| = |L| + |R|`.
    pub fn n(&self) -> usize {
        2 * self.n_left
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, left: usize, right: usize) -> Option<i64> {
        self.weights[left * self.n_left + right]
    }

    /// Vertex index of right vertex `j` in the dual vector.
    pub fn right_vertex(&self, j: usize) -> usize {
        self.n_left + j
    }

    /// Largest absolute edge weight, at least 1.
    pub fn max_abs_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight.abs()).max().unwrap_or(0).max(1)
    }

    /// Box radius `n·W` that contains an optimal dual.
    pub fn default_radius(&self) -> i64 {
        self.n() as i64 * self.max_abs_weight()
    }

    /// Slack `s_i - t_j - w_ij` of an edge.
    pub fn slack(&self, e: &Edge, p: &[i64]) -> i64 {
        p[e.left] - p[self.right_vertex(e.right)] - e.weight
    }

    pub fn is_feasible(&self, p: &[i64]) -> bool {
        p.len() == self.n() && self.edges.iter().all(|e| self.slack(e, p) >= 0)
    }

    /// `Σ s - Σ t` when feasible, `None` (+∞) otherwise.
    pub fn dual_value(&self, p: &[i64]) -> Option<i64> {
        if !self.is_feasible(p) {
            return None;
        }
        let (s, t) = p.split_at(self.n_left);
        Some(s.iter().sum::<i64>() - t.iter().sum::<i64>())
    }

    fn graph_where(&self, keep: impl Fn(&Edge) -> bool) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(self.n_left, self.n_left);
        for e in self.edges.iter().filter(|e| keep(e)) {
            g.add_edge(e.left, e.right);
        }
        g
    }

    /// Edges with zero slack at `p`.
    pub fn tight_graph(&self, p: &[i64]) -> BipartiteGraph {
        self.graph_where(|e| self.slack(e, p) == 0)
    }

    /// Steepest `{0,+1}` direction at a feasible `p`.
    ///
    /// `X` is the set of vertices reachable from right vertices left exposed
    /// by a maximum tight matching; the slope is minus the number of exposed
    /// right vertices.
    pub fn local_opt_matching(&self, p: &[i64]) -> Result<LocalStep> {
        check_len(self.n(), p.len())?;
        if !self.is_feasible(p) {
            return Err(Error::InfeasibleStart);
        }
        let g = self.tight_graph(p);
        let m = hopcroft_karp(&g);
        let (left, right) = m.reach_from_unmatched_right(&g);
        let mut direction = vec![0; self.n()];
        let mut slope = 0;
        for i in 0..self.n_left {
            if left[i] {
                direction[i] = 1;
                slope += 1;
            }
            if right[i] {
                direction[self.right_vertex(i)] = 1;
                slope -= 1;
            }
        }
        Ok(LocalStep { direction, slope })
    }

    /// Long step along a `{0,1}` direction: the smallest slack among edges
    /// leaving `X` on the left and entering it on the right.
    pub fn matching_long_step(&self, p: &[i64], d: &[i64]) -> Result<i64> {
        check_len(self.n(), p.len())?;
        check_len(self.n(), d.len())?;
        self.edges
            .iter()
            .filter(|e| d[e.left] == 0 && d[self.right_vertex(e.right)] == 1)
            .map(|e| self.slack(e, p))
            .min()
            .ok_or(Error::Unbounded)
    }

    /// `t = 0`, `s_i = max_j w_ij`.
    pub fn trivially_feasible_dual(&self) -> Vec<i64> {
        let mut p = vec![0; self.n()];
        for i in 0..self.n_left {
            p[i] = (0..self.n_left)
                .filter_map(|j| self.weight(i, j))
                .max()
                .unwrap_or(0);
        }
        p
    }

    /// Closure of the dual feasible region: `t_j - s_i <= -w_ij` per edge.
    pub fn domain_system(&self) -> InequalitySystem {
        let mut sys = InequalitySystem::new(self.n());
        for e in &self.edges {
            sys.add_difference(e.left, self.right_vertex(e.right), -e.weight);
        }
        sys
    }

    /// An l±∞-closest dual-feasible point to `p_hat`.
    pub fn feasibility_projection(&self, p_hat: &[f64]) -> Result<Projection> {
        let seed = to_real(&self.trivially_feasible_dual());
        project_onto_system(&self.domain_system(), p_hat, Some(&seed))
    }

    /// A perfect matching inside the tight subgraph of an optimal dual.
    pub fn extract_primal(&self, p_star: &[i64]) -> Result<Matching> {
        check_len(self.n(), p_star.len())?;
        if !self.is_feasible(p_star) {
            return Err(Error::InfeasibleStart);
        }
        let m = hopcroft_karp(&self.tight_graph(p_star));
        if m.size < self.n_left {
            return Err(Error::NoPerfectTightMatching);
        }
        Ok(Matching::new(m.pairs()))
    }

    /// The optimal dual set: dual feasibility plus tightness on `m_star`.
    pub fn argmin_system_matching(&self, m_star: &Matching) -> Result<InequalitySystem> {
        let mut sys = self.domain_system();
        for &(i, j) in &m_star.pairs {
            let w = self.weight(i, j).ok_or_else(|| {
                Error::InvalidInput(format!("matching uses a non-edge ({i}, {j})"))
            })?;
            sys.add_difference(self.right_vertex(j), i, w);
        }
        Ok(sys)
    }

    pub fn matching_weight(&self, m: &Matching) -> Option<i64> {
        m.pairs.iter().map(|&(i, j)| self.weight(i, j)).sum()
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            n_left: self.n_left,
            n_right: self.n_left,
            edges: self
                .edges
                .iter()
                .map(|e| (e.left + 1, self.right_vertex(e.right) + 1, e.weight))
                .collect(),
        }
    }

    pub fn from_file(file: InstanceFile) -> Result<Self> {
        if file.n_left != file.n_right {
            return Err(Error::InvalidInput(format!(
                "sides differ: n_left = {}, n_right = {}",
                file.n_left, file.n_right
            )));
        }
        let n_left = file.n_left;
        let edges = file
            .edges
            .into_iter()
            .map(|(i, j, w)| {
                if i == 0 || i > n_left || j <= n_left || j > 2 * n_left {
                    return Err(Error::InvalidInput(format!("edge ({i}, {j}) out of range")));
                }
                Ok(Edge {
                    left: i - 1,
                    right: j - n_left - 1,
                    weight: w,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_left, edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_file(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("instance serializes")
    }
}

impl LnConvexOracle for MatchingInstance {
    fn dim(&self) -> usize {
        self.n()
    }

    fn flavor(&self) -> Flavor {
        Flavor::L
    }

    fn value(&self, p: &[i64]) -> Option<i64> {
        self.dual_value(p)
    }

    fn local_direction(&self, p: &[i64]) -> LocalStep {
        self.local_opt_matching(p)
            .expect("local direction requested at an infeasible dual")
    }

    fn long_step_hint(&self, p: &[i64], d: &[i64]) -> Option<Result<i64>> {
        Some(self.matching_long_step(p, d))
    }

    fn step_cap(&self) -> i64 {
        2 * self.default_radius() * self.n() as i64
    }
}

/// On-disk instance: 1-based left indices, right indices offset by `n_left`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n_left: usize,
    pub n_right: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

/// Vertex-disjoint `(left, right)` pairs, 0-based per side, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn is_perfect(&self, n_side: usize) -> bool {
        self.pairs.len() == n_side
    }
}
