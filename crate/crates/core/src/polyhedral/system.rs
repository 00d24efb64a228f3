use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Box bounds `lower_i <= p_i <= upper_i` plus difference bounds
/// `p_j - p_i <= diff(i, j)` over `n` coordinates.
///
/// A missing bound is infinite. Difference bounds are keyed by the ordered
/// pair `(i, j)` and never stored for `i == j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySystem {
    n: usize,
    lower: Vec<Option<i64>>,
    upper: Vec<Option<i64>>,
    diff: BTreeMap<(usize, usize), i64>,
}

impl InequalitySystem {
    /// The unconstrained system on `n` coordinates.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            lower: vec![None; n],
            upper: vec![None; n],
            diff: BTreeMap::new(),
        }
    }

    /// The single point `p`.
    pub fn singleton(p: &[i64]) -> Self {
        let mut sys = Self::new(p.len());
        for (i, &v) in p.iter().enumerate() {
            sys.lower[i] = Some(v);
            sys.upper[i] = Some(v);
        }
        sys
    }

    /// The integer box `[lo, hi]^n`.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Self {
        let mut sys = Self::new(n);
        sys.lower = vec![Some(lo); n];
        sys.upper = vec![Some(hi); n];
        sys
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower(&self, i: usize) -> Option<i64> {
        self.lower[i]
    }

    pub fn upper(&self, i: usize) -> Option<i64> {
        self.upper[i]
    }

    pub fn difference(&self, i: usize, j: usize) -> Option<i64> {
        self.diff.get(&(i, j)).copied()
    }

    pub fn set_lower(&mut self, i: usize, bound: Option<i64>) {
        self.lower[i] = bound;
    }

    pub fn set_upper(&mut self, i: usize, bound: Option<i64>) {
        self.upper[i] = bound;
    }

    /// Replaces the bound on `p_j - p_i`.
    pub fn set_difference(&mut self, i: usize, j: usize, bound: Option<i64>) {
        assert_ne!(i, j, "difference bound needs distinct indices");
        match bound {
            Some(b) => {
                self.diff.insert((i, j), b);
            }
            None => {
                self.diff.remove(&(i, j));
            }
        }
    }

    /// Adds `p_j - p_i <= bound`, keeping the tighter of old and new.
    pub fn add_difference(&mut self, i: usize, j: usize, bound: i64) {
        assert_ne!(i, j, "difference bound needs distinct indices");
        self.diff
            .entry((i, j))
            .and_modify(|b| *b = (*b).min(bound))
            .or_insert(bound);
    }

    pub fn tighten_lower(&mut self, i: usize, bound: i64) {
        self.lower[i] = Some(self.lower[i].map_or(bound, |b| b.max(bound)));
    }

    pub fn tighten_upper(&mut self, i: usize, bound: i64) {
        self.upper[i] = Some(self.upper[i].map_or(bound, |b| b.min(bound)));
    }

    /// Finite difference bounds as `((i, j), bound)` in lexicographic order.
    pub fn differences(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.diff.iter().map(|(&k, &v)| (k, v))
    }

    pub fn has_box_bounds(&self) -> bool {
        self.lower.iter().chain(&self.upper).any(Option::is_some)
    }

    /// Number of finite bounds.
    pub fn constraint_count(&self) -> usize {
        self.lower.iter().chain(&self.upper).filter(|b| b.is_some()).count() + self.diff.len()
    }

    /// Membership with absolute tolerance `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        if p.len() != self.n {
            return false;
        }
        for i in 0..self.n {
            if self.lower[i].is_some_and(|a| p[i] < a as f64 - tol) {
                return false;
            }
            if self.upper[i].is_some_and(|b| p[i] > b as f64 + tol) {
                return false;
            }
        }
        self.diff
            .iter()
            .all(|(&(i, j), &g)| p[j] - p[i] <= g as f64 + tol)
    }

    pub fn contains_int(&self, p: &[i64]) -> bool {
        if p.len() != self.n {
            return false;
        }
        for i in 0..self.n {
            if self.lower[i].is_some_and(|a| p[i] < a) || self.upper[i].is_some_and(|b| p[i] > b)
            {
                return false;
            }
        }
        self.diff.iter().all(|(&(i, j), &g)| p[j] - p[i] <= g)
    }

    /// Largest violation of any inequality at `p` (zero when inside).
    pub fn max_violation(&self, p: &[f64]) -> Result<f64> {
        check_len(self.n, p.len())?;
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            if let Some(a) = self.lower[i] {
                worst = worst.max(a as f64 - p[i]);
            }
            if let Some(b) = self.upper[i] {
                worst = worst.max(p[i] - b as f64);
            }
        }
        for (&(i, j), &g) in &self.diff {
            worst = worst.max(p[j] - p[i] - g as f64);
        }
        Ok(worst)
    }

    /// Intersection of two systems on the same coordinates.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_len(self.n, other.n)?;
        let mut out = self.clone();
        for i in 0..self.n {
            if let Some(a) = other.lower[i] {
                out.tighten_lower(i, a);
            }
            if let Some(b) = other.upper[i] {
                out.tighten_upper(i, b);
            }
        }
        for ((i, j), g) in other.differences() {
            out.add_difference(i, j, g);
        }
        Ok(out)
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            n: self.n,
            alpha: self.lower.iter().any(Option::is_some).then(|| self.lower.clone()),
            beta: self.upper.iter().any(Option::is_some).then(|| self.upper.clone()),
            gamma: self.diff.iter().map(|(&(i, j), &g)| (i + 1, j + 1, g)).collect(),
        }
    }

    pub fn from_file(file: SystemFile) -> Result<Self> {
        let n = file.n;
        if n == 0 {
            return Err(Error::InvalidInput("system dimension must be positive".into()));
        }
        let mut sys = Self::new(n);
        if let Some(alpha) = file.alpha {
            check_len(n, alpha.len())?;
            sys.lower = alpha;
        }
        if let Some(beta) = file.beta {
            check_len(n, beta.len())?;
            sys.upper = beta;
        }
        for (i, j, g) in file.gamma {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::InvalidInput(format!(
                    "difference bound ({i}, {j}) out of range for n = {n}"
                )));
            }
            sys.add_difference(i - 1, j - 1, g);
        }
        Ok(sys)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_file(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(&self.to_file())?)?;
        Ok(())
    }
}

/// On-disk form of an [`InequalitySystem`]. Indices are 1-based; a
/// `(i, j, bound)` triple means `p_j - p_i <= bound`; `null` entries in
/// `alpha`/`beta` and absent sequences are infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Option<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Option<i64>>>,
    #[serde(default)]
    pub gamma: Vec<(usize, usize, i64)>,
}
