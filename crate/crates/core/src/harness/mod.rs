//! Randomized verification of every inequality in the crate.
//!
//! [`fuzz_verify`] draws seeded random matrices, vectors and graphs, evaluates
//! each bound on them and tallies, per named check, how often the inequality
//! fails by more than its tolerance.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain_err, Result};

mod checks;
mod random;

pub use random::{complex_gaussian, random_matrix, random_unitary, random_vector, substream, Ensemble};

/// Default violation tolerance for bounds.
pub const BOUND_TOL: f64 = 1e-8;
/// Tolerance for "refined ≤ unrefined" orderings.
pub const ORDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    /// `None` cycles through every ensemble by trial index.
    pub ensemble: Option<Ensemble>,
    pub t_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    /// Random `(x, y)` pairs per trial for the pointwise inequalities.
    pub pairs: usize,
    /// Also fuzz the graph energy bounds.
    pub graphs: bool,
}

impl FuzzConfig {
    pub fn new(seed: u64, trials: usize, dim: usize) -> Self {
        Self {
            seed,
            trials,
            dim,
            ensemble: None,
            t_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            alpha_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            p_grid: vec![0.5, 1.0, 2.0, 3.0, f64::INFINITY],
            pairs: 10,
            graphs: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=12).contains(&self.dim) {
            return domain_err(format!("dimension must be between 2 and 12, got {}", self.dim));
        }
        for &v in self.t_grid.iter().chain(&self.alpha_grid) {
            if !(0.0..=1.0).contains(&v) {
                return domain_err(format!("grid value {v} outside [0, 1]"));
            }
        }
        for &p in &self.p_grid {
            if p.is_nan() || p <= 0.0 {
                return domain_err(format!("Schatten index must be positive, got {p}"));
            }
        }
        Ok(())
    }

    /// Ensemble used for a given trial.
    pub fn ensemble_for(&self, trial: usize) -> Ensemble {
        self.ensemble.unwrap_or(Ensemble::ALL[trial % Ensemble::ALL.len()])
    }
}

/// Tally for one named inequality.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckStats {
    /// Number of evaluations.
    pub trials: usize,
    pub violations: usize,
    /// Smallest slack seen (negative means the inequality failed by that much).
    pub worst_slack: f64,
    /// Smallest `|slack|` seen: how close the inequality came to equality.
    pub tightest_slack: f64,
    pub tolerance: f64,
}

impl CheckStats {
    fn new(tolerance: f64) -> Self {
        Self { trials: 0, violations: 0, worst_slack: f64::INFINITY, tightest_slack: f64::INFINITY, tolerance }
    }

    fn record(&mut self, slack: f64) {
        self.trials += 1;
        // NaN slack counts as a violation.
        if !(slack >= -self.tolerance) {
            self.violations += 1;
        }
        self.worst_slack = if slack.is_nan() { f64::NAN } else { self.worst_slack.min(slack) };
        self.tightest_slack = self.tightest_slack.min(slack.abs());
    }

    fn merge(&mut self, other: &CheckStats) {
        self.trials += other.trials;
        self.violations += other.violations;
        self.worst_slack = self.worst_slack.min(other.worst_slack);
        self.tightest_slack = self.tightest_slack.min(other.tightest_slack);
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckStats>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn empty() -> Self {
        Self { checks: BTreeMap::new(), pass: true }
    }

    /// Records `slack` for the named check; negative slack beyond `tol` is a violation.
    pub fn record(&mut self, name: &str, slack: f64, tol: f64) {
        let stats = self.checks.entry(name.to_owned()).or_insert_with(|| CheckStats::new(tol));
        stats.record(slack);
        if stats.violations > 0 {
            self.pass = false;
        }
    }

    /// Records a boolean property as slack `0` (holds) or `−1` (fails).
    pub fn record_bool(&mut self, name: &str, holds: bool) {
        self.record(name, if holds { 0.0 } else { -1.0 }, 0.0);
    }

    pub fn merge(&mut self, other: &VerificationReport) {
        for (name, stats) in &other.checks {
            match self.checks.get_mut(name) {
                Some(s) => s.merge(stats),
                None => {
                    self.checks.insert(name.clone(), stats.clone());
                }
            }
        }
        self.pass = self.checks.values().all(|s| s.violations == 0);
    }

    pub fn total_violations(&self) -> usize {
        self.checks.values().map(|s| s.violations).sum()
    }

    /// Names of checks with at least one violation.
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, s)| s.violations > 0).map(|(n, _)| n.as_str()).collect()
    }

    /// Plain-text table, one line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.keys().map(|k| k.len()).max().unwrap_or(5).max(5);
        let mut out = format!(
            "{:<width$}  {:>8}  {:>10}  {:>12}  {:>12}\n",
            "check", "trials", "violations", "worst_slack", "tightest"
        );
        for (name, s) in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>8}  {:>10}  {:>12.3e}  {:>12.3e}\n",
                name, s.trials, s.violations, s.worst_slack, s.tightest_slack
            ));
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// Runs `config.trials` independent trials and aggregates the results.
pub fn fuzz_verify(config: &FuzzConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut report = VerificationReport::empty();
    for trial in 0..config.trials {
        let mut rng = substream(config.seed, trial as u64);
        checks::run_trial(config, config.ensemble_for(trial), &mut rng, &mut report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_pass() {
        let r = fuzz_verify(&FuzzConfig::new(1, 0, 3)).unwrap();
        assert!(r.pass && r.checks.is_empty());
    }

    #[test]
    fn rejects_bad_config() {
        assert!(fuzz_verify(&FuzzConfig::new(1, 1, 1)).is_err());
        let mut c = FuzzConfig::new(1, 1, 3);
        c.p_grid = vec![0.0];
        assert!(fuzz_verify(&c).is_err());
    }

    #[test]
    fn stats_track_extremes() {
        let mut r = VerificationReport::empty();
        r.record("a", 0.5, 1e-8);
        r.record("a", 1e-3, 1e-8);
        assert!(r.pass);
        r.record("a", -1.0, 1e-8);
        let s = &r.checks["a"];
        assert_eq!((s.trials, s.violations), (3, 1));
        assert_eq!(s.worst_slack, -1.0);
        assert_eq!(s.tightest_slack, 1e-3);
        assert!(!r.pass);
        assert_eq!(r.failing(), vec!["a"]);
        r.record("b", f64::NAN, 1e-8);
        assert_eq!(r.checks["b"].violations, 1);
    }

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let mut c = FuzzConfig::new(5, 6, 3);
        c.pairs = 3;
        let a = fuzz_verify(&c).unwrap();
        assert!(a.pass, "{}", a.to_table());
        let b = fuzz_verify(&c).unwrap();
        assert_eq!(a.checks, b.checks);
    }
}
