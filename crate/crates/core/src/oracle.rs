//! Brute-force reference implementations. Each works by enumeration and
//! shares no code with the fast paths it checks, beyond the data types.

use crate::descent::{Flavor, LnConvexOracle, LocalStep};
use crate::error::{check_len, Error, Result};
use crate::lattice::linf_pm_dist_int;
use crate::matching::{Matching, MatchingInstance};
use crate::polyhedral::{AuxiliaryGraph, InequalitySystem, TIE_TOLERANCE};

pub const MATCHING_MAX_SIDE: usize = 10;
pub const MU_MAX_DIM: usize = 6;
pub const MU_MAX_RADIUS: i64 = 8;
pub const PATHS_MAX_DIM: usize = 8;
pub const LOCAL_MAX_DIM: usize = 12;

fn gate(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::SizeLimit { what, got, limit });
    }
    Ok(())
}

/// Maximum-weight perfect matching by enumerating permutations.
pub fn brute_force_matching(inst: &MatchingInstance) -> Result<(Matching, i64)> {
    let n = inst.n_left();
    gate("matching side", n, MATCHING_MAX_SIDE)?;
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    permute(inst, 0, 0, &mut perm, &mut used, &mut best);
    let (weight, perm) =
        best.ok_or_else(|| Error::NoPerfectMatching("no permutation uses only edges".into()))?;
    Ok((Matching::new(perm.into_iter().enumerate().collect()), weight))
}

fn permute(
    inst: &MatchingInstance,
    i: usize,
    acc: i64,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(i64, Vec<usize>)>,
) {
    let n = used.len();
    if i == n {
        if best.as_ref().is_none_or(|(w, _)| acc > *w) {
            *best = Some((acc, perm.clone()));
        }
        return;
    }
    for j in 0..n {
        if used[j] {
            continue;
        }
        let Some(w) = inst.weight(i, j) else { continue };
        used[j] = true;
        perm.push(j);
        permute(inst, i + 1, acc + w, perm, used, best);
        perm.pop();
        used[j] = false;
    }
}

/// All integral points of `sys` inside the box `[lo, hi]` (per coordinate),
/// in lexicographic order. Coordinates are fixed one at a time, each within
/// the interval its constraints with earlier coordinates allow.
pub fn enumerate_system_points(sys: &InequalitySystem, lo: &[i64], hi: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = sys.n();
    check_len(n, lo.len())?;
    check_len(n, hi.len())?;
    let mut out = Vec::new();
    let mut point = vec![0; n];
    enumerate_from(sys, lo, hi, 0, &mut point, &mut out);
    Ok(out)
}

fn enumerate_from(
    sys: &InequalitySystem,
    lo: &[i64],
    hi: &[i64],
    k: usize,
    point: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if k == point.len() {
        out.push(point.clone());
        return;
    }
    let mut a = lo[k];
    let mut b = hi[k];
    if let Some(l) = sys.lower(k) {
        a = a.max(l);
    }
    if let Some(u) = sys.upper(k) {
        b = b.min(u);
    }
    for i in 0..k {
        // p_k - p_i <= gamma and p_i - p_k <= gamma'
        if let Some(g) = sys.difference(i, k) {
            b = b.min(point[i] + g);
        }
        if let Some(g) = sys.difference(k, i) {
            a = a.max(point[i] - g);
        }
    }
    for v in a..=b {
        point[k] = v;
        enumerate_from(sys, lo, hi, k + 1, point, out);
    }
}

/// Smallest l±∞ distance from `p` to an integral point of `sys` within
/// `radius` of `p` in every coordinate; `None` if there is no such point.
pub fn brute_force_mu(sys: &InequalitySystem, p: &[i64], radius: i64) -> Result<Option<i64>> {
    gate("system dimension", sys.n(), MU_MAX_DIM)?;
    gate("search radius", radius.max(0) as usize, MU_MAX_RADIUS as usize)?;
    check_len(sys.n(), p.len())?;
    let lo: Vec<i64> = p.iter().map(|x| x - radius).collect();
    let hi: Vec<i64> = p.iter().map(|x| x + radius).collect();
    Ok(enumerate_system_points(sys, &lo, &hi)?
        .iter()
        .map(|q| linf_pm_dist_int(q, p))
        .min())
}

/// Feasibility of a difference-constraint system by Bellman–Ford with an
/// extra root, in exact integer arithmetic. Returns a solution if feasible.
pub fn difference_system_solution(sys: &InequalitySystem) -> Option<Vec<i64>> {
    let n = sys.n();
    // vertex n is the zero reference; edge u -> v of weight c encodes x_v - x_u <= c
    let mut edges: Vec<(usize, usize, i64)> = sys.differences().map(|((i, j), g)| (i, j, g)).collect();
    for i in 0..n {
        if let Some(u) = sys.upper(i) {
            edges.push((n, i, u));
        }
        if let Some(l) = sys.lower(i) {
            edges.push((i, n, -l));
        }
    }
    let mut dist = vec![0i64; n + 1];
    for _ in 0..=n {
        let mut changed = false;
        for &(u, v, c) in &edges {
            if dist[u] + c < dist[v] {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            let shift = dist[n];
            return Some(dist[..n].iter().map(|d| d - shift).collect());
        }
    }
    None
}

/// `μ(p; g)` for a matching dual: the least `k` such that some optimal dual
/// lies in `[p - b, p + a]` with `a + b = k`. The optimal set comes from a
/// permutation-enumerated optimum and complementary slackness; each box test
/// is an independent Bellman–Ford feasibility check.
pub fn enumerate_mu_matching(inst: &MatchingInstance, p: &[i64]) -> Result<i64> {
    check_len(inst.n(), p.len())?;
    let (m_star, _) = brute_force_matching(inst)?;
    let mut optimal = InequalitySystem::new(inst.n());
    for e in inst.edges() {
        optimal.add_difference(e.left, inst.right_vertex(e.right), -e.weight);
    }
    for &(i, j) in &m_star.pairs {
        let w = inst.weight(i, j).expect("matching edge");
        optimal.add_difference(inst.right_vertex(j), i, w);
    }
    let any = difference_system_solution(&optimal)
        .ok_or_else(|| Error::Invariant("optimal set is empty".into()))?;
    let within = |k: i64| {
        (0..=k).any(|a| {
            let mut sys = optimal.clone();
            for (i, &x) in p.iter().enumerate() {
                sys.set_lower(i, Some(x - (k - a)));
                sys.set_upper(i, Some(x + a));
            }
            difference_system_solution(&sys).is_some()
        })
    };
    let (mut lo, mut hi) = (-1, linf_pm_dist_int(&any, p));
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if within(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Every optimal dual of `inst` with `lo <= p <= hi`. Relies on weak
/// duality: for fixed `s`, the only candidate is `t_j = min_i (s_i - w_ij)`.
pub fn enumerate_matching_argmin(inst: &MatchingInstance, lo: &[i64], hi: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = inst.n();
    check_len(n, lo.len())?;
    check_len(n, hi.len())?;
    let (_, opt) = brute_force_matching(inst)?;
    let k = inst.n_left();
    let mut out = Vec::new();
    let mut s: Vec<i64> = lo[..k].to_vec();
    loop {
        let mut p = s.clone();
        let mut ok = true;
        for j in 0..k {
            let t = (0..k).filter_map(|i| inst.weight(i, j).map(|w| s[i] - w)).min();
            let t = t.expect("every right vertex has an edge");
            let v = inst.right_vertex(j);
            if t < lo[v] || t > hi[v] {
                ok = false;
                break;
            }
            p.push(t);
        }
        if ok && inst.dual_value(&p) == Some(opt) {
            out.push(p);
        }
        // odometer over s
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if s[i] < hi[i] {
                s[i] += 1;
                for (m, x) in s.iter_mut().enumerate().skip(i + 1) {
                    *x = lo[m];
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrutePaths {
    pub weight: f64,
    /// Every simple `s`–`t` path within the tie tolerance of `weight`.
    pub paths: Vec<Vec<usize>>,
}

/// Enumerates all simple `s`–`t` paths of the auxiliary graph.
pub fn brute_force_paths(graph: &AuxiliaryGraph) -> Result<BrutePaths> {
    gate("graph dimension", graph.dim(), PATHS_MAX_DIM)?;
    let mut all = Vec::new();
    let mut on_path = vec![false; graph.vertex_count()];
    let mut path = vec![graph.source()];
    on_path[graph.source()] = true;
    walk(graph, 0.0, &mut path, &mut on_path, &mut all);
    let weight = all
        .iter()
        .map(|(w, _)| *w)
        .fold(f64::INFINITY, f64::min);
    let paths = all
        .into_iter()
        .filter(|(w, _)| *w <= weight + TIE_TOLERANCE)
        .map(|(_, p)| p)
        .collect();
    Ok(BrutePaths { weight, paths })
}

fn walk(
    graph: &AuxiliaryGraph,
    acc: f64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    all: &mut Vec<(f64, Vec<usize>)>,
) {
    let v = *path.last().unwrap();
    if v == graph.sink() {
        all.push((acc, path.clone()));
        return;
    }
    let next: Vec<(usize, f64)> = graph.out_edges(v).map(|e| (e.to, e.weight)).collect();
    for (to, w) in next {
        if on_path[to] {
            continue;
        }
        on_path[to] = true;
        path.push(to);
        walk(graph, acc + w, path, on_path, all);
        path.pop();
        on_path[to] = false;
    }
}

/// Steepest neighborhood direction by full enumeration, written
/// independently of the descent module's local search.
pub fn brute_force_local_direction<G: LnConvexOracle + ?Sized>(g: &G, p: &[i64]) -> Result<LocalStep> {
    let n = g.dim();
    gate("local search dimension", n, LOCAL_MAX_DIM)?;
    check_len(n, p.len())?;
    let base = g.value(p).ok_or(Error::InfeasibleStart)?;
    let families: Vec<i64> = match g.flavor() {
        Flavor::L => vec![1],
        Flavor::LNatural => vec![1, -1],
    };
    let mut candidates: Vec<(i64, usize, Vec<usize>, Vec<i64>)> = Vec::new();
    for (rank, &sign) in families.iter().enumerate() {
        for mask in 0..(1usize << n) {
            let d: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { sign } else { 0 }).collect();
            let q: Vec<i64> = p.iter().zip(&d).map(|(a, b)| a + b).collect();
            if let Some(v) = g.value(&q) {
                let support = (0..n).filter(|&i| d[i] != 0).collect();
                candidates.push((v, rank, support, d));
            }
        }
    }
    let (v, _, _, direction) = candidates
        .into_iter()
        .min_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)))
        .expect("the zero direction is feasible");
    Ok(LocalStep {
        direction,
        slope: v - base,
    })
}
