#![allow(dead_code)]

use lconvex_warmstart::harness::SeededRng;
use lconvex_warmstart::matching::{Edge, MatchingInstance};
use lconvex_warmstart::polyhedral::{is_nonempty, InequalitySystem};

/// Box bounds and differences with integer constants in `[-range, range]`,
/// each present with probability about one half. May be empty.
pub fn random_system(rng: &mut SeededRng, n: usize, range: i64) -> InequalitySystem {
    let mut sys = InequalitySystem::new(n);
    for i in 0..n {
        let a = rng.int_in(-range, range);
        let b = rng.int_in(a, range);
        if rng.int_in(0, 1) == 1 {
            sys.set_lower(i, Some(a));
        }
        if rng.int_in(0, 1) == 1 {
            sys.set_upper(i, Some(b));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.int_in(0, 2) == 0 {
                sys.add_difference(i, j, rng.int_in(-range, range));
            }
        }
    }
    sys
}

pub fn random_nonempty_system(rng: &mut SeededRng, n: usize, range: i64) -> InequalitySystem {
    loop {
        let sys = random_system(rng, n, range);
        if is_nonempty(&sys) {
            return sys;
        }
    }
}

/// Like [`random_nonempty_system`] but every coordinate is boxed, so the
/// system is bounded.
pub fn random_bounded_system(rng: &mut SeededRng, n: usize, range: i64) -> InequalitySystem {
    loop {
        let mut sys = random_system(rng, n, range);
        for i in 0..n {
            if sys.lower(i).is_none() {
                sys.set_lower(i, Some(-range));
            }
            if sys.upper(i).is_none() {
                sys.set_upper(i, Some(range));
            }
        }
        if is_nonempty(&sys) {
            return sys;
        }
    }
}

pub fn random_ints(rng: &mut SeededRng, n: usize, range: i64) -> Vec<i64> {
    (0..n).map(|_| rng.int_in(-range, range)).collect()
}

pub fn random_reals(rng: &mut SeededRng, n: usize, range: f64) -> Vec<f64> {
    (0..n).map(|_| (2.0 * rng.unit_f64() - 1.0) * range).collect()
}

/// A random permutation provides a perfect matching; every other pair is
/// an edge with probability one half. Weights lie in `[-w, w]`.
pub fn random_instance(rng: &mut SeededRng, n_side: usize, w: i64) -> MatchingInstance {
    let mut perm: Vec<usize> = (0..n_side).collect();
    for i in (1..n_side).rev() {
        perm.swap(i, rng.int_in(0, i as i64) as usize);
    }
    let mut edges = Vec::new();
    for i in 0..n_side {
        for j in 0..n_side {
            if perm[i] == j || rng.int_in(0, 1) == 1 {
                edges.push(Edge {
                    left: i,
                    right: j,
                    weight: rng.int_in(-w, w),
                });
            }
        }
    }
    MatchingInstance::new(n_side, edges).expect("permutation edges give a perfect matching")
}

/// A feasible dual: the trivial one, with `s` raised and `t` lowered by
/// random amounts, then shifted along the all-one direction.
pub fn random_feasible_dual(rng: &mut SeededRng, inst: &MatchingInstance, spread: i64) -> Vec<i64> {
    let mut p = inst.trivially_feasible_dual();
    let k = inst.n_left();
    let shift = rng.int_in(-spread, spread);
    for (v, x) in p.iter_mut().enumerate() {
        let d = rng.int_in(0, spread);
        *x += if v < k { d } else { -d } + shift;
    }
    debug_assert!(inst.is_feasible(&p));
    p
}
