use rayon::prelude::*;
use serde::Serialize;

use crate::ballots::{build_preference_matrix, derive_ballots, BallotConfig};
use crate::electorate::sample_electorate;
use crate::error::Result;
use crate::scenario::Scenario;
use crate::spatial::{euclidean_distance, geometric_median, WeiszfeldOptions};
use crate::systems::{ElectionInput, SystemRegistry};

/// Seed of trial `t` is `base_seed + t · TRIAL_SEED_STRIDE` (wrapping).
pub const TRIAL_SEED_STRIDE: u64 = 1_000_003;

pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    base_seed.wrapping_add((trial as u64).wrapping_mul(TRIAL_SEED_STRIDE))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloSettings {
    pub trials: usize,
    pub voters_per_trial: usize,
    pub base_seed: u64,
    pub ballots: BallotConfig,
    pub weiszfeld: WeiszfeldOptions,
}

impl Default for MonteCarloSettings {
    fn default() -> Self {
        Self {
            trials: 200,
            voters_per_trial: 2_000,
            base_seed: 42,
            ballots: BallotConfig::default(),
            weiszfeld: WeiszfeldOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemDistribution {
    pub system: String,
    /// δ per trial, in trial order.
    pub deltas: Vec<f64>,
    pub mean: f64,
    /// Sample variance (n − 1 denominator; 0 for a single trial).
    pub variance: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub p5: f64,
    pub p95: f64,
}

impl SystemDistribution {
    fn from_deltas(system: String, deltas: Vec<f64>) -> Self {
        let n = deltas.len() as f64;
        let mean = deltas.iter().sum::<f64>() / n;
        let variance = if deltas.len() > 1 {
            deltas.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let mut sorted = deltas.clone();
        sorted.sort_by(f64::total_cmp);
        Self {
            system,
            mean,
            variance,
            median: percentile(&sorted, 50.0),
            q1: percentile(&sorted, 25.0),
            q3: percentile(&sorted, 75.0),
            p5: percentile(&sorted, 5.0),
            p95: percentile(&sorted, 95.0),
            deltas,
        }
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Linear interpolation between closest ranks of an ascending slice.
pub fn percentile(sorted: &[f64], pct: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty data");
    let pos = (pct / 100.0).clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloSummary {
    pub scenario: String,
    pub trials: usize,
    pub voters_per_trial: usize,
    pub base_seed: u64,
    pub trial_seeds: Vec<u64>,
    /// One entry per system, in registry order.
    pub systems: Vec<SystemDistribution>,
    /// `outranks[a][b]` counts trials where system `a` had strictly smaller δ than `b`.
    pub outranks: Vec<Vec<usize>>,
}

impl MonteCarloSummary {
    pub fn system(&self, name: &str) -> Option<&SystemDistribution> {
        self.systems.iter().find(|s| s.system == name)
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.systems.iter().position(|s| s.system == name)
    }

    /// Trials in which `a` had strictly smaller δ than `b`.
    pub fn outrank_count(&self, a: &str, b: &str) -> Option<usize> {
        Some(self.outranks[self.index(a)?][self.index(b)?])
    }

    /// Systems ordered by median δ (registry order on ties).
    pub fn by_median(&self) -> Vec<&SystemDistribution> {
        let mut v: Vec<_> = self.systems.iter().collect();
        v.sort_by(|a, b| a.median.total_cmp(&b.median));
        v
    }
}

/// Re-samples the electorate `trials` times and records every system's δ
/// against that trial's own geometric median. Trials run in parallel; the
/// summary is assembled in trial order.
pub fn run_monte_carlo(
    scenario: &Scenario,
    registry: &SystemRegistry,
    settings: &MonteCarloSettings,
) -> Result<MonteCarloSummary> {
    let trial_seeds: Vec<u64> = (0..settings.trials)
        .map(|t| trial_seed(settings.base_seed, t))
        .collect();

    let per_trial: Vec<Vec<f64>> = trial_seeds
        .par_iter()
        .map(|&seed| -> Result<Vec<f64>> {
            let electorate = sample_electorate(&scenario.electorate, settings.voters_per_trial, seed)?;
            let median = geometric_median(&electorate.voters, settings.weiszfeld)?;
            let profile = derive_ballots(
                build_preference_matrix(&electorate, &scenario.candidates),
                settings.ballots,
            );
            let input = ElectionInput {
                profile: &profile,
                candidates: &scenario.candidates,
                electorate: &electorate,
            };
            Ok(registry
                .iter()
                .map(|s| euclidean_distance(s.run(&input).outcome_position, median))
                .collect())
        })
        .collect::<Result<_>>()?;

    let names = registry.names();
    let m = names.len();
    let mut outranks = vec![vec![0usize; m]; m];
    for deltas in &per_trial {
        for a in 0..m {
            for b in 0..m {
                if deltas[a] < deltas[b] {
                    outranks[a][b] += 1;
                }
            }
        }
    }
    let systems = names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            SystemDistribution::from_deltas(name.to_string(), per_trial.iter().map(|d| d[j]).collect())
        })
        .collect();

    Ok(MonteCarloSummary {
        scenario: scenario.name.clone(),
        trials: settings.trials,
        voters_per_trial: settings.voters_per_trial,
        base_seed: settings.base_seed,
        trial_seeds,
        systems,
        outranks,
    })
}
