//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use lconvex_warmstart::descent::{steepest_descent, DescentOptions};
use lconvex_warmstart::extract::{extract_argmin_system, BlackBoxOracle};
use lconvex_warmstart::harness::{
    best_over_rho, run_adversary, run_grid, sample_instance, summarize, GridSpec, Method, SeededRng,
};
use lconvex_warmstart::lattice::{dot, l2_norm, round_half_down, to_real};
use lconvex_warmstart::matching::MatchingInstance;
use lconvex_warmstart::oracle;
use lconvex_warmstart::polyhedral::{
    build_auxiliary_graph, evaluate, mu_bar, mu_bar_subgradient, potential_from_point,
    subgradient_from_path, InequalitySystem, PathWitness,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn optimum_and_system(inst: &MatchingInstance) -> Result<(Vec<i64>, InequalitySystem), String> {
    let p = steepest_descent(inst, &inst.trivially_feasible_dual(), &DescentOptions::default())
        .map_err(e2s)?
        .point;
    let sys = inst
        .argmin_system_matching(&inst.extract_primal(&p).map_err(e2s)?)
        .map_err(e2s)?;
    Ok((p, sys))
}

fn criterion_1() -> Outcome {
    let mut sys = InequalitySystem::new(2);
    sys.set_lower(0, Some(0));
    sys.set_upper(0, Some(1));
    sys.set_lower(1, Some(-1));
    sys.set_upper(1, Some(0));
    sys.add_difference(1, 0, 2);
    let p_hat = [2.0, -2.0];

    let start = Instant::now();
    let value = mu_bar(&sys, &p_hat, None).map_err(e2s)?;
    let z = mu_bar_subgradient(&sys, &p_hat, None).map_err(e2s)?;
    let elapsed = start.elapsed();
    ensure(value == 2.0, || format!("mu_bar = {value}"))?;
    ensure(z == [1.0, -1.0], || format!("subgradient = {z:?}"))?;

    let graph = build_auxiliary_graph(&sys, &p_hat).map_err(e2s)?;
    let brute = oracle::brute_force_paths(&graph).map_err(e2s)?;
    ensure(brute.weight == -2.0, || format!("shortest weight {}", brute.weight))?;
    let mut names = Vec::new();
    for vertices in &brute.paths {
        let path = PathWitness {
            labels: vertices.iter().map(|&v| graph.label(v)).collect(),
            vertices: vertices.clone(),
            weight: brute.weight,
        };
        ensure(subgradient_from_path(2, &path) == [1.0, -1.0], || {
            format!("path {path} gives another subgradient")
        })?;
        names.push(path.edge_names().join(","));
    }
    names.sort();
    let expected = ["s2,20,01,1t", "s2,21,1t"];
    ensure(names == expected, || format!("shortest paths {names:?}"))?;
    Ok(format!("mu_bar = 2, z = (+1, -1), paths {names:?}, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = SeededRng::new(2);
    let sigmas = [1u32, 5, 10, 20];
    let mut runs = 0;
    for k in 0..200 {
        let sigma = sigmas[k % 4];
        let inst = sample_instance(10, sigma, &mut rng).map_err(e2s)?;
        let (_, best) = oracle::brute_force_matching(&inst).map_err(e2s)?;
        for _ in 0..20 {
            let spread = rng.int_in(1, 4 * sigma as i64 + 4);
            let p0 = random_feasible_dual(&mut rng, &inst, spread);
            let res = steepest_descent(&inst, &p0, &DescentOptions::unit_step()).map_err(e2s)?;
            let mu = oracle::enumerate_mu_matching(&inst, &p0).map_err(e2s)?;
            ensure(res.value == best, || format!("instance {k}: dual {} vs primal {best}", res.value))?;
            ensure(res.trace.iterations as i64 <= mu + 1, || {
                format!("instance {k}: {} iterations, mu = {mu}", res.trace.iterations)
            })?;
            ensure(res.distance_from(&p0) == mu, || {
                format!("instance {k}: travelled {} but mu = {mu}", res.distance_from(&p0))
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} descents"))
}

fn criterion_3() -> Outcome {
    let mut rng = SeededRng::new(3);
    for k in 0..500 {
        let n = rng.int_in(1, 6) as usize;
        let sys = random_bounded_system(&mut rng, n, 2);
        let p = random_ints(&mut rng, n, 6);
        // every point of the system lies in [-2, 2]^n, so radius 8 covers it
        let brute = oracle::brute_force_mu(&sys, &p, 8)
            .map_err(e2s)?
            .ok_or_else(|| format!("pair {k}: no point within the radius"))?;
        let fast = mu_bar(&sys, &to_real(&p), None).map_err(e2s)?;
        ensure(fast == brute as f64, || format!("pair {k}: mu_bar {fast} vs {brute}"))?;
    }
    Ok("500 pairs".into())
}

fn criterion_4() -> Outcome {
    let mut rng = SeededRng::new(4);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..500 {
        let n = 2 * rng.int_in(1, 3) as usize;
        let sigma = rng.int_in(1, 20) as u32;
        let inst = sample_instance(n, sigma, &mut rng).map_err(e2s)?;
        let (p_star, sys) = optimum_and_system(&inst)?;
        let noise = rng.int_in(0, 3 * sigma as i64) as f64;
        let p_hat: Vec<f64> = p_star
            .iter()
            .map(|&x| x as f64 + (2.0 * rng.unit_f64() - 1.0) * noise)
            .collect();
        let mu_hat = mu_bar(&sys, &p_hat, Some(&to_real(&p_star))).map_err(e2s)?;
        let q_hat = inst.feasibility_projection(&p_hat).map_err(e2s)?.point;
        let start = round_half_down(&q_hat);
        ensure(inst.is_feasible(&start), || format!("pair {k}: rounded start infeasible"))?;
        let mu = oracle::enumerate_mu_matching(&inst, &start).map_err(e2s)?;
        ensure(mu as f64 <= 2.0 * mu_hat + 1.0, || format!("pair {k}: mu {mu} > 2 * {mu_hat} + 1"))?;
        worst = worst.max(mu as f64 - 2.0 * mu_hat - 1.0);
    }
    Ok(format!("500 pairs, largest mu - (2 mu_bar + 1) = {worst}"))
}

fn criterion_5() -> Outcome {
    let mut rng = SeededRng::new(5);
    let mut min_slack = f64::INFINITY;
    for k in 0..1000 {
        let n = rng.int_in(1, 8) as usize;
        let sys = random_nonempty_system(&mut rng, n, 5);
        let p_hat = random_reals(&mut rng, n, 10.0);
        let y = random_reals(&mut rng, n, 15.0);
        let witness = to_real(&oracle::difference_system_solution(&sys).ok_or("empty system")?);
        let eval = evaluate(&sys, &p_hat, Some(&witness)).map_err(e2s)?;
        let z = &eval.subgradient;
        ensure(z.iter().all(|v| [-1.0, 0.0, 1.0].contains(v)), || format!("triple {k}: z = {z:?}"))?;
        ensure(l2_norm(z) <= 2f64.sqrt() + 1e-15, || format!("triple {k}: |z| too large"))?;
        let diff: Vec<f64> = y.iter().zip(&p_hat).map(|(a, b)| a - b).collect();
        let slack = mu_bar(&sys, &y, None).map_err(e2s)? - eval.value - dot(z, &diff);
        ensure(slack >= -1e-9, || format!("triple {k}: slack {slack}"))?;
        min_slack = min_slack.min(slack);
    }
    Ok(format!("1000 triples, min slack {min_slack:e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = SeededRng::new(6);
    let mut worst_gap = 0.0f64;
    for k in 0..500 {
        let n = rng.int_in(1, 8) as usize;
        let sys = random_nonempty_system(&mut rng, n, 6);
        let integral = k % 2 == 0;
        let p_hat = if integral {
            to_real(&random_ints(&mut rng, n, 10))
        } else {
            random_reals(&mut rng, n, 10.0)
        };
        // a point of the optimal set, as the learner would receive it
        let witness = to_real(&oracle::difference_system_solution(&sys).ok_or("empty system")?);
        let graph = build_auxiliary_graph(&sys, &p_hat).map_err(e2s)?;
        let q = potential_from_point(&sys, &witness, &p_hat).map_err(e2s)?;
        let lowest = graph.reweighted(&q).into_iter().fold(f64::INFINITY, f64::min);
        ensure(lowest >= -1e-12, || format!("system {k}: reweighted edge {lowest}"))?;
        let fast = graph.shortest_path(Some(&q)).map_err(e2s)?.weight;
        let slow = graph.shortest_path(None).map_err(e2s)?.weight;
        let gap = (fast - slow).abs();
        if integral {
            ensure(fast == slow, || format!("system {k}: {fast} vs {slow}"))?;
        } else {
            ensure(gap <= 1e-9, || format!("system {k}: {fast} vs {slow}"))?;
        }
        worst_gap = worst_gap.max(gap);
    }
    Ok(format!("500 systems, largest real gap {worst_gap:e}"))
}

struct RegretCell {
    n: usize,
    c: i64,
    t: usize,
    mean: f64,
    max_ratio: f64,
}

fn regret_grid() -> Result<Vec<RegretCell>, String> {
    let mut cells = Vec::new();
    for n in [2usize, 8] {
        for c in [1i64, 4] {
            for t in [64usize, 256, 1024] {
                let mut sum = 0.0;
                let mut max_ratio = f64::NEG_INFINITY;
                for seed in 0..20 {
                    let r = run_adversary(n, c, t, seed).map_err(e2s)?;
                    sum += r.regret;
                    max_ratio = max_ratio.max(r.regret / r.bound);
                }
                cells.push(RegretCell {
                    n,
                    c,
                    t,
                    mean: sum / 20.0,
                    max_ratio,
                });
            }
        }
    }
    Ok(cells)
}

fn criterion_7(cells: &[RegretCell]) -> Outcome {
    let worst = cells.iter().map(|c| c.max_ratio).fold(f64::NEG_INFINITY, f64::max);
    ensure(worst <= 1.0, || format!("regret / bound reached {worst}"))?;
    Ok(format!("240 runs, largest regret / C sqrt(2nT) = {worst:.4}"))
}

fn criterion_8(cells: &[RegretCell]) -> Outcome {
    let mut lowest = f64::INFINITY;
    let mut slopes = Vec::new();
    for group in cells.chunks(3) {
        for cell in group {
            let scale = cell.c as f64 * ((cell.n * cell.t) as f64).sqrt();
            lowest = lowest.min(cell.mean / scale);
        }
        let xs: Vec<f64> = group.iter().map(|c| (c.t as f64).ln()).collect();
        let ys: Vec<f64> = group.iter().map(|c| c.mean.ln()).collect();
        let mx = xs.iter().sum::<f64>() / 3.0;
        let my = ys.iter().sum::<f64>() / 3.0;
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let slope = num / den;
        ensure((slope - 0.5).abs() <= 0.1, || {
            format!("n = {}, C = {}: slope {slope:.3}", group[0].n, group[0].c)
        })?;
        slopes.push(slope);
    }
    ensure(lowest >= 0.2, || format!("mean regret / C sqrt(nT) fell to {lowest:.3}"))?;
    Ok(format!(
        "smallest mean regret / C sqrt(nT) = {lowest:.3}, slopes {:?}",
        slopes.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>()
    ))
}

fn criterion_9() -> Outcome {
    let spec = GridSpec {
        sigmas: vec![1, 5, 20],
        ..GridSpec::desk()
    };
    let outputs = run_grid(&spec).map_err(e2s)?;
    let cells = summarize(&outputs);
    let best = |m: Method, sigma: u32| {
        best_over_rho(&cells, m, sigma)
            .map(|c| (c.mean_terminal_avg_iterations, c.rho))
            .ok_or_else(|| format!("missing cell {} at sigma {sigma}", m.name()))
    };
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for sigma in [1u32, 5, 20] {
        let (mu, mu_rho) = best(Method::MuBar, sigma)?;
        let mut line = format!("sigma {sigma}: mu {mu:.2} (rho {mu_rho})");
        for m in [Method::L1, Method::Linf, Method::Cold] {
            let (v, rho) = best(m, sigma)?;
            line.push_str(&format!(", {} {v:.2} (rho {rho})", m.name()));
            if mu > v {
                failures.push(format!("sigma {sigma}: mu {mu:.2} > {} {v:.2}", m.name()));
            }
        }
        if sigma == 1 {
            let (cold, _) = best(Method::Cold, 1)?;
            let gap = 1.0 - mu / cold;
            line.push_str(&format!(", gap to cold {:.0}%", 100.0 * gap));
            if gap <= 0.2 {
                failures.push(format!("sigma 1: gap to cold only {:.1}%", 100.0 * gap));
            }
        }
        report.push(line);
    }
    let summary = report.join("; ");
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{} [{summary}]", failures.join("; ")))
    }
}

fn criterion_10() -> Outcome {
    let mut rng = SeededRng::new(10);
    let mut total_points = 0;
    for k in 0..50 {
        let inst = random_instance(&mut rng, 2, 4);
        let c = inst.default_radius();
        ensure(c <= 16, || format!("instance {k}: C = {c}"))?;
        let bb = BlackBoxOracle::new(&inst, c, inst.domain_system()).map_err(e2s)?;
        let black = extract_argmin_system(&bb).map_err(e2s)?.system;
        let (_, cs) = optimum_and_system(&inst)?;
        let (lo, hi) = (vec![-2 * c; 4], vec![2 * c; 4]);
        let a = oracle::enumerate_system_points(&black, &lo, &hi).map_err(e2s)?;
        let b = oracle::enumerate_system_points(&cs, &lo, &hi).map_err(e2s)?;
        ensure(a == b, || format!("instance {k}: {} vs {} points", a.len(), b.len()))?;
        total_points += a.len();
    }
    Ok(format!("50 instances, {total_points} optimal points in total"))
}

fn criterion_11() -> Outcome {
    let mut rng = SeededRng::new(11);
    let mut total_points = 0;
    for k in 0..100 {
        let inst = if k % 2 == 0 {
            let side = rng.int_in(1, 4) as usize;
            random_instance(&mut rng, side, 8)
        } else {
            let n = 2 * rng.int_in(1, 2) as usize;
            sample_instance(n, rng.int_in(1, 20) as u32, &mut rng).map_err(e2s)?
        };
        let (p_star, sys) = optimum_and_system(&inst)?;
        let (_, opt) = oracle::brute_force_matching(&inst).map_err(e2s)?;
        let lo: Vec<i64> = p_star.iter().map(|x| x - 6).collect();
        let hi: Vec<i64> = p_star.iter().map(|x| x + 6).collect();
        let inside = oracle::enumerate_system_points(&sys, &lo, &hi).map_err(e2s)?;
        for p in &inside {
            ensure(inst.dual_value(p) == Some(opt), || format!("instance {k}: {p:?} is not optimal"))?;
        }
        let optimal = oracle::enumerate_matching_argmin(&inst, &lo, &hi).map_err(e2s)?;
        ensure(inside == optimal, || {
            format!("instance {k}: system has {} points, optimum set {}", inside.len(), optimal.len())
        })?;
        total_points += inside.len();
    }
    Ok(format!("100 instances, {total_points} optimal points in total"))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: usize, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {detail} [{secs:.2} s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {detail} [{secs:.2} s]");
            }
        }
    };
    report(1, &criterion_1);
    report(2, &criterion_2);
    report(3, &criterion_3);
    report(4, &criterion_4);
    report(5, &criterion_5);
    report(6, &criterion_6);
    match regret_grid() {
        Ok(cells) => {
            report(7, &|| criterion_7(&cells));
            report(8, &|| criterion_8(&cells));
        }
        Err(e) => {
            report(7, &|| Err(e.clone()));
            report(8, &|| Err(e.clone()));
        }
    }
    report(9, &criterion_9);
    report(10, &criterion_10);
    report(11, &criterion_11);
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
