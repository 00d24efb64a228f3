use std::fs;
use std::path::{Path, PathBuf};

use super::rng::SeededRng;
use crate::error::{Error, Result};
use crate::matching::{Edge, MatchingInstance};

fn check_even(n: usize) -> Result<usize> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidInput(format!("n must be positive and even, got {n}")));
    }
    Ok(n / 2)
}

/// Draws one instance from `rng`.
///
/// Left vertex `i` and right vertex `j` (1-based, `j` in `k+1..=2k` where
/// `k = n/2`) always share a weight-1 edge when `j = i + k`. Any other pair
/// gets weight `i (j - k) + u` with `u` uniform on `[-sigma, sigma]`, and an
/// edge only if that weight is positive.
pub fn sample_instance(n: usize, sigma: u32, rng: &mut SeededRng) -> Result<MatchingInstance> {
    let k = check_even(n)?;
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in k + 1..=2 * k {
            let (left, right) = (i - 1, j - k - 1);
            if j == i + k {
                edges.push(Edge { left, right, weight: 1 });
                continue;
            }
            let weight = (i * (j - k)) as i64 + rng.symmetric_int(sigma);
            if weight > 0 {
                edges.push(Edge { left, right, weight });
            }
        }
    }
    MatchingInstance::new(k, edges)
}

pub fn generate_instance(n: usize, sigma: u32, seed: u64) -> Result<MatchingInstance> {
    sample_instance(n, sigma, &mut SeededRng::new(seed))
}

/// `count` instances drawn in sequence from one stream.
pub fn instance_stream(n: usize, sigma: u32, count: usize, seed: u64) -> Result<Vec<MatchingInstance>> {
    let mut rng = SeededRng::new(seed);
    (0..count).map(|_| sample_instance(n, sigma, &mut rng)).collect()
}

fn instance_path(dir: &Path, index: usize) -> PathBuf {
    dir.join(format!("instance_{index:05}.json"))
}

/// Writes a stream of instances into `dir`, one JSON file each.
pub fn write_dataset(dir: impl AsRef<Path>, instances: &[MatchingInstance]) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    instances
        .iter()
        .enumerate()
        .map(|(t, inst)| {
            let path = instance_path(dir, t);
            inst.save(&path)?;
            Ok(path)
        })
        .collect()
}

/// Reads every `*.json` file of `dir` in file-name order.
pub fn load_dataset(dir: impl AsRef<Path>) -> Result<Vec<MatchingInstance>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::InvalidInput("dataset directory has no instance files".into()));
    }
    paths.iter().map(MatchingInstance::load).collect()
}

/// Largest absolute edge weight over a collection of instances.
pub fn max_weight(instances: &[MatchingInstance]) -> i64 {
    instances.iter().map(|i| i.max_abs_weight()).max().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_free_weights() {
        let inst = generate_instance(10, 0, 3).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { 1 } else { ((i + 1) * (j + 1)) as i64 };
                assert_eq!(inst.weight(i, j), Some(expected));
            }
        }
    }

    #[test]
    fn backbone_always_present() {
        for seed in 0..20 {
            let inst = generate_instance(8, 20, seed).unwrap();
            for i in 0..4 {
                assert_eq!(inst.weight(i, i), Some(1));
            }
            assert!(inst.edges().iter().all(|e| e.weight > 0));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_instance(10, 5, 11).unwrap().to_json();
        let b = generate_instance(10, 5, 11).unwrap().to_json();
        assert_eq!(a, b);
        assert!(generate_instance(7, 1, 0).is_err());
    }

    #[test]
    fn dataset_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let insts = instance_stream(6, 2, 4, 9).unwrap();
        write_dataset(dir.path(), &insts).unwrap();
        assert_eq!(load_dataset(dir.path()).unwrap(), insts);
    }
}
