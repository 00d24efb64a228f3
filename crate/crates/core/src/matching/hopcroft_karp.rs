use std::collections::VecDeque;

/// Bipartite graph with left vertices `0..n_left` and right vertices
/// `0..n_right`; `adj[i]` lists the right neighbors of left vertex `i`.
#[derive(Debug, Clone, Default)]
pub struct BipartiteGraph {
    pub n_left: usize,
    pub n_right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        Self {
            n_left,
            n_right,
            adj: vec![Vec::new(); n_left],
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        self.adj[left].push(right);
    }

    fn reverse_adj(&self) -> Vec<Vec<usize>> {
        let mut radj = vec![Vec::new(); self.n_right];
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                radj[j].push(i);
            }
        }
        radj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMatching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
    pub size: usize,
}

impl MaxMatching {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| (i, j)))
            .collect()
    }

    /// Vertices reachable from unmatched right vertices along alternating
    /// paths (right -> left by any edge, left -> right by the matching edge).
    /// Returns `(left_reached, right_reached)`.
    pub fn reach_from_unmatched_right(&self, g: &BipartiteGraph) -> (Vec<bool>, Vec<bool>) {
        let radj = g.reverse_adj();
        let mut left = vec![false; g.n_left];
        let mut right = vec![false; g.n_right];
        let mut queue: VecDeque<usize> = (0..g.n_right)
            .filter(|&j| self.mate_right[j].is_none())
            .collect();
        for &j in &queue {
            right[j] = true;
        }
        while let Some(j) = queue.pop_front() {
            for &i in &radj[j] {
                if left[i] {
                    continue;
                }
                left[i] = true;
                if let Some(j2) = self.mate_left[i] {
                    if !right[j2] {
                        right[j2] = true;
                        queue.push_back(j2);
                    }
                }
            }
        }
        (left, right)
    }

    /// Mirror of [`Self::reach_from_unmatched_right`] starting on the left.
    pub fn reach_from_unmatched_left(&self, g: &BipartiteGraph) -> (Vec<bool>, Vec<bool>) {
        let mut left = vec![false; g.n_left];
        let mut right = vec![false; g.n_right];
        let mut queue: VecDeque<usize> = (0..g.n_left)
            .filter(|&i| self.mate_left[i].is_none())
            .collect();
        for &i in &queue {
            left[i] = true;
        }
        while let Some(i) = queue.pop_front() {
            for &j in &g.adj[i] {
                if right[j] {
                    continue;
                }
                right[j] = true;
                if let Some(i2) = self.mate_right[j] {
                    if !left[i2] {
                        left[i2] = true;
                        queue.push_back(i2);
                    }
                }
            }
        }
        (left, right)
    }
}

/// Maximum-cardinality matching in `O(m √n)`.
pub fn hopcroft_karp(g: &BipartiteGraph) -> MaxMatching {
    const INF: usize = usize::MAX;
    let mut mate_left = vec![None; g.n_left];
    let mut mate_right: Vec<Option<usize>> = vec![None; g.n_right];
    let mut dist = vec![INF; g.n_left];
    let mut size = 0;

    loop {
        // layer the free left vertices and everything reachable from them
        let mut queue = VecDeque::new();
        for i in 0..g.n_left {
            if mate_left[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = INF;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &g.adj[i] {
                match mate_right[j] {
                    None => found = true,
                    Some(i2) if dist[i2] == INF => {
                        dist[i2] = dist[i] + 1;
                        queue.push_back(i2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; g.n_left];
        for i in 0..g.n_left {
            if mate_left[i].is_none()
                && augment(g, i, &mut dist, &mut next, &mut mate_left, &mut mate_right)
            {
                size += 1;
            }
        }
    }

    MaxMatching {
        mate_left,
        mate_right,
        size,
    }
}

fn augment(
    g: &BipartiteGraph,
    i: usize,
    dist: &mut [usize],
    next: &mut [usize],
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
) -> bool {
    while next[i] < g.adj[i].len() {
        let j = g.adj[i][next[i]];
        next[i] += 1;
        let ok = match mate_right[j] {
            None => true,
            Some(i2) => {
                dist[i2] == dist[i] + 1 && augment(g, i2, dist, next, mate_left, mate_right)
            }
        };
        if ok {
            mate_left[i] = Some(j);
            mate_right[j] = Some(i);
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_edge_set() {
        let g = BipartiteGraph::new(2, 2);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 0);
        let (left, right) = m.reach_from_unmatched_right(&g);
        assert_eq!(right, vec![true, true]);
        assert_eq!(left, vec![false, false]);
    }

    #[test]
    fn perfect_graph_has_empty_reach() {
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 0);
        g.add_edge(1, 1);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 2);
        let (left, right) = m.reach_from_unmatched_right(&g);
        assert!(left.iter().chain(&right).all(|&b| !b));
    }

    #[test]
    fn star_saturates_once() {
        let mut g = BipartiteGraph::new(2, 1);
        g.add_edge(0, 0);
        g.add_edge(1, 0);
        assert_eq!(hopcroft_karp(&g).size, 1);
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy 0-0 blocks 1; the optimum reroutes 0 to 1
        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 1);
        g.add_edge(2, 2);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 3);
        for (i, j) in m.pairs() {
            assert!(g.adj[i].contains(&j));
            assert_eq!(m.mate_right[j], Some(i));
        }
    }
}
