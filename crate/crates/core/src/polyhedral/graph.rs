//! The auxiliary shortest-path graph of an inequality system.
//!
//! Vertices are the `n` coordinates, an anchor `0`, a source `s` and a sink
//! `t`. Each finite inequality contributes one edge whose weight is how much
//! slack the point `p̂` leaves in that inequality (negative when violated).
//! The shortest `s`–`t` path weight is minus the l±∞ distance from `p̂` to
//! the system.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use super::system::InequalitySystem;
use crate::error::{check_len, Error, Result};

/// Labels within this distance are treated as equal when relaxing.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxVertex {
    Var(usize),
    Anchor,
    Source,
    Sink,
}

impl fmt::Display for AuxVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxVertex::Var(i) => write!(f, "{}", i + 1),
            AuxVertex::Anchor => write!(f, "0"),
            AuxVertex::Source => write!(f, "s"),
            AuxVertex::Sink => write!(f, "t"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxEdge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    n: usize,
    edges: Vec<AuxEdge>,
    out: Vec<Vec<usize>>,
}

impl AuxiliaryGraph {
    /// Builds the graph for `sys` at the point `p_hat`. Infinite bounds
    /// produce no edge.
    pub fn build(sys: &InequalitySystem, p_hat: &[f64]) -> Result<Self> {
        check_len(sys.n(), p_hat.len())?;
        let n = sys.n();
        let mut g = Self {
            n,
            edges: Vec::new(),
            out: vec![Vec::new(); n + 3],
        };
        let anchor = g.anchor();
        let (s, t) = (g.source(), g.sink());
        for v in 0..=n {
            g.push(s, v, 0.0);
        }
        for ((i, j), gamma) in sys.differences() {
            g.push(i, j, gamma as f64 - p_hat[j] + p_hat[i]);
        }
        for i in 0..n {
            if let Some(alpha) = sys.lower(i) {
                g.push(i, anchor, -(alpha as f64) + p_hat[i]);
            }
        }
        for j in 0..n {
            if let Some(beta) = sys.upper(j) {
                g.push(anchor, j, beta as f64 - p_hat[j]);
            }
        }
        for v in 0..=n {
            g.push(v, t, 0.0);
        }
        Ok(g)
    }

    fn push(&mut self, from: usize, to: usize, weight: f64) {
        self.out[from].push(self.edges.len());
        self.edges.push(AuxEdge { from, to, weight });
    }

    /// Number of coordinates of the underlying system.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 3
    }

    pub fn anchor(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.n + 1
    }

    pub fn sink(&self) -> usize {
        self.n + 2
    }

    pub fn label(&self, v: usize) -> AuxVertex {
        match v {
            v if v < self.n => AuxVertex::Var(v),
            v if v == self.n => AuxVertex::Anchor,
            v if v == self.n + 1 => AuxVertex::Source,
            _ => AuxVertex::Sink,
        }
    }

    pub fn edges(&self) -> &[AuxEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &AuxEdge> + '_ {
        self.out[v].iter().map(move |&e| &self.edges[e])
    }

    /// Weight of the edge `from -> to`, if present.
    pub fn weight(&self, from: usize, to: usize) -> Option<f64> {
        self.out_edges(from).find(|e| e.to == to).map(|e| e.weight)
    }

    /// Edge weights after reweighting with `potential`: `w - q_to + q_from`.
    pub fn reweighted(&self, potential: &Potential) -> Vec<f64> {
        self.edges
            .iter()
            .map(|e| e.weight - potential.values[e.to] + potential.values[e.from])
            .collect()
    }

    /// Sum of the original weights along a vertex sequence.
    pub fn path_weight(&self, vertices: &[usize]) -> Option<f64> {
        vertices
            .windows(2)
            .map(|w| self.weight(w[0], w[1]))
            .sum::<Option<f64>>()
    }

    /// Shortest `s`–`t` path. With a potential the reweighted graph is
    /// searched with Dijkstra; without one a label-correcting search with
    /// negative-cycle detection runs on the original weights. The returned
    /// weight is always in original units.
    pub fn shortest_path(&self, potential: Option<&Potential>) -> Result<PathWitness> {
        let labels = match potential {
            Some(q) => self.dijkstra(q)?,
            None => self.label_correcting()?,
        };
        let t = self.sink();
        let mut vertices = vec![t];
        let mut v = t;
        while let Some(p) = labels.parent[v] {
            vertices.push(p);
            v = p;
            if vertices.len() > self.vertex_count() {
                return Err(Error::Invariant("parent pointers form a cycle".into()));
            }
        }
        if v != self.source() {
            return Err(Error::Invariant("sink not reached from source".into()));
        }
        vertices.reverse();
        let weight = self
            .path_weight(&vertices)
            .ok_or_else(|| Error::Invariant("path uses a missing edge".into()))?;
        Ok(PathWitness {
            labels: vertices.iter().map(|&v| self.label(v)).collect(),
            vertices,
            weight,
        })
    }

    /// Shortest-path distances from `s` to every vertex, in original units.
    pub fn distances(&self, potential: Option<&Potential>) -> Result<Vec<f64>> {
        Ok(match potential {
            Some(q) => self.dijkstra(q)?.dist,
            None => self.label_correcting()?.dist,
        })
    }

    fn label_correcting(&self) -> Result<Labels> {
        let nv = self.vertex_count();
        let s = self.source();
        let mut dist = vec![f64::INFINITY; nv];
        let mut parent = vec![None; nv];
        dist[s] = 0.0;
        for round in 0..nv {
            let mut changed = false;
            for e in &self.edges {
                if dist[e.from].is_finite() && dist[e.from] + e.weight < dist[e.to] - TIE_TOLERANCE
                {
                    dist[e.to] = dist[e.from] + e.weight;
                    parent[e.to] = Some(e.from);
                    changed = true;
                }
            }
            if !changed {
                return Ok(Labels { dist, parent });
            }
            if round + 1 == nv {
                break;
            }
        }
        Err(Error::NegativeCycle)
    }

    fn dijkstra(&self, potential: &Potential) -> Result<Labels> {
        let nv = self.vertex_count();
        check_len(nv, potential.values.len())?;
        let reduced = self.reweighted(potential);
        let scale = 1.0 + potential.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if let Some((e, w)) = reduced
            .iter()
            .enumerate()
            .find(|(_, &w)| w < -TIE_TOLERANCE * scale)
        {
            let edge = self.edges[e];
            return Err(Error::InvalidPotential(format!(
                "edge {}->{} has reduced weight {w}",
                self.label(edge.from),
                self.label(edge.to)
            )));
        }

        let s = self.source();
        let mut dist = vec![f64::INFINITY; nv];
        let mut parent = vec![None; nv];
        let mut done = vec![false; nv];
        let mut heap = BinaryHeap::new();
        dist[s] = 0.0;
        heap.push(HeapEntry { dist: 0.0, vertex: s });
        while let Some(HeapEntry { dist: d, vertex: v }) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &e in &self.out[v] {
                let edge = self.edges[e];
                let nd = d + reduced[e].max(0.0);
                if !done[edge.to] && nd < dist[edge.to] - TIE_TOLERANCE {
                    dist[edge.to] = nd;
                    parent[edge.to] = Some(v);
                    heap.push(HeapEntry {
                        dist: nd,
                        vertex: edge.to,
                    });
                }
            }
        }
        // back to original units: d(v) = d'(v) + q_v - q_s
        let qs = potential.values[s];
        for (v, d) in dist.iter_mut().enumerate() {
            if d.is_finite() {
                *d += potential.values[v] - qs;
            }
        }
        Ok(Labels { dist, parent })
    }

    /// True when no negative cycle exists, i.e. the system is non-empty.
    pub fn has_no_negative_cycle(&self) -> bool {
        self.label_correcting().is_ok()
    }
}

struct Labels {
    dist: Vec<f64>,
    parent: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A vertex labeling `q` with `w_ij - q_j + q_i >= 0` on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub values: Vec<f64>,
}

/// A simple `s`–`t` path in the auxiliary graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PathWitness {
    /// Vertex indices from source to sink.
    pub vertices: Vec<usize>,
    pub labels: Vec<AuxVertex>,
    /// Total original weight; never positive.
    pub weight: f64,
}

impl PathWitness {
    /// The vertex right after the source.
    pub fn entry(&self) -> AuxVertex {
        self.labels[1]
    }

    /// The vertex right before the sink.
    pub fn exit(&self) -> AuxVertex {
        self.labels[self.labels.len() - 2]
    }

    /// Edge list in the `s2, 21, 1t` notation.
    pub fn edge_names(&self) -> Vec<String> {
        self.labels
            .windows(2)
            .map(|w| format!("{}{}", w[0], w[1]))
            .collect()
    }
}

impl fmt::Display for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} (weight {})", self.edge_names().join(", "), self.weight)
    }
}
