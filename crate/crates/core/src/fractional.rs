//! Fractional ballot: every voter spreads one unit of influence over the
//! candidates with a Boltzmann (softmax) kernel on distance, and the outcome
//! is the influence-weighted centroid of candidate positions.
//!
//! The discrete variant elects the candidate nearest that centroid but
//! reports the centroid itself as the outcome; the continuous variant hands
//! each candidate its mean weight as legislative power. Both share the same
//! outcome position.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ballots::PreferenceMatrix;
use crate::candidates::{argmax_by_key, argmin_by_key, CandidateSet};
use crate::error::{Error, Result};
use crate::spatial::{euclidean_distance, Point2};
use crate::systems::{ElectionInput, ElectionResult, ElectoralSystem, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FractionalVariant {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalConfig {
    pub sigma: f64,
    pub variant: FractionalVariant,
}

impl FractionalConfig {
    pub fn new(sigma: f64, variant: FractionalVariant) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidSigma(sigma));
        }
        Ok(Self { sigma, variant })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    n_candidates: usize,
    /// Row-major `n × K` softmax weights.
    weights: Vec<f64>,
    pub mean_weights: Vec<f64>,
    pub centroid: Point2,
}

impl WeightProfile {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n_candidates..(i + 1) * self.n_candidates]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks_exact(self.n_candidates)
    }
}

/// Softmax of `-d/σ` per row, with the row minimum subtracted before
/// exponentiation so tiny σ cannot underflow a whole row to zero.
pub fn compute_weights(matrix: &PreferenceMatrix, candidates: &CandidateSet, sigma: f64) -> Result<WeightProfile> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidSigma(sigma));
    }
    let k = matrix.n_candidates();
    if k != candidates.len() {
        return Err(Error::InvalidCandidates(format!(
            "matrix has {k} columns but there are {} candidates",
            candidates.len()
        )));
    }
    let n = matrix.n_voters();
    let mut weights = Vec::with_capacity(n * k);
    let mut sums = vec![0.0; k];
    for row in matrix.rows() {
        let d_min = row.iter().copied().fold(f64::INFINITY, f64::min);
        let start = weights.len();
        weights.extend(row.iter().map(|d| (-(d - d_min) / sigma).exp()));
        let z: f64 = weights[start..].iter().sum();
        for (w, s) in weights[start..].iter_mut().zip(sums.iter_mut()) {
            *w /= z;
            *s += *w;
        }
    }
    let mean_weights: Vec<f64> = sums.into_iter().map(|s| s / n as f64).collect();
    let centroid = mean_weights
        .iter()
        .zip(candidates.positions())
        .fold(Point2::default(), |acc, (w, p)| acc + *p * *w);
    Ok(WeightProfile {
        n_candidates: k,
        weights,
        mean_weights,
        centroid,
    })
}

pub fn run_fractional(
    matrix: &PreferenceMatrix,
    candidates: &CandidateSet,
    config: FractionalConfig,
) -> Result<ElectionResult> {
    let profile = compute_weights(matrix, candidates, config.sigma)?;
    let trace = Trace::Fractional {
        sigma: config.sigma,
        mean_weights: profile.mean_weights.clone(),
    };
    let centroid = profile.centroid;
    Ok(match config.variant {
        FractionalVariant::Discrete => {
            let winner = candidates.nearest(centroid);
            ElectionResult {
                system_name: format!("FB Discrete (sigma={})", config.sigma),
                outcome_position: centroid,
                centroid_position: None,
                seat_shares: BTreeMap::from([(winner, 1.0)]),
                winner_indices: vec![winner],
                is_pr: false,
                trace,
            }
        }
        FractionalVariant::Continuous => {
            let seat_shares: BTreeMap<usize, f64> = profile
                .mean_weights
                .iter()
                .enumerate()
                .filter(|(_, w)| **w > 0.0)
                .map(|(k, w)| (k, *w))
                .collect();
            ElectionResult {
                system_name: format!("FB Continuous (sigma={})", config.sigma),
                outcome_position: centroid,
                centroid_position: Some(centroid),
                winner_indices: seat_shares.keys().copied().collect(),
                seat_shares,
                is_pr: true,
                trace,
            }
        }
    })
}

/// Registry adapter for one (σ, variant) configuration.
#[derive(Debug, Clone)]
pub struct FractionalBallot {
    config: FractionalConfig,
    name: String,
}

impl FractionalBallot {
    pub fn new(sigma: f64, variant: FractionalVariant) -> Result<Self> {
        let config = FractionalConfig::new(sigma, variant)?;
        let kind = match variant {
            FractionalVariant::Discrete => "Discrete",
            FractionalVariant::Continuous => "Continuous",
        };
        Ok(Self {
            config,
            name: format!("FB {kind} (sigma={sigma})"),
        })
    }

    pub fn config(&self) -> FractionalConfig {
        self.config
    }
}

impl ElectoralSystem for FractionalBallot {
    fn name(&self) -> &str {
        &self.name
    }

    fn run(&self, input: &ElectionInput<'_>) -> ElectionResult {
        let mut r = run_fractional(&input.profile.distances, input.candidates, self.config)
            .expect("config and candidate set were validated");
        r.system_name = self.name.clone();
        r
    }
}

pub const COLD_SIGMA: f64 = 1e-4;
pub const HOT_SIGMA: f64 = 1e6;

/// Outcome of checking both temperature limits on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    /// Rows whose minimum distance is shared by several candidates; they are
    /// left out of the cold-limit row check.
    pub tied_rows: Vec<usize>,
    /// Rows (excluding ties) whose largest cold weight is not on the nearest candidate.
    pub cold_row_mismatches: Vec<usize>,
    pub cold_discrete_winner: usize,
    pub plurality_winner: usize,
    pub hot_max_weight_deviation: f64,
    pub hot_centroid_gap: f64,
}

impl LimitReport {
    pub fn cold_limit_holds(&self) -> bool {
        self.cold_row_mismatches.is_empty() && self.cold_discrete_winner == self.plurality_winner
    }

    pub fn hot_limit_holds(&self) -> bool {
        self.hot_max_weight_deviation < 1e-6 && self.hot_centroid_gap < 1e-6
    }
}

/// Checks that σ = 1e-4 behaves like plurality and σ = 1e6 gives uniform
/// weights with the centroid at the mean candidate position.
pub fn verify_limits(matrix: &PreferenceMatrix, candidates: &CandidateSet) -> Result<LimitReport> {
    let k = matrix.n_candidates();
    let cold = compute_weights(matrix, candidates, COLD_SIGMA)?;
    let mut tied_rows = Vec::new();
    let mut cold_row_mismatches = Vec::new();
    let mut first_prefs = vec![0usize; k];
    for (i, (row, w)) in matrix.rows().zip(cold.rows()).enumerate() {
        let nearest = argmin_by_key(row.iter().copied());
        first_prefs[nearest] += 1;
        if row.iter().filter(|d| **d == row[nearest]).count() > 1 {
            tied_rows.push(i);
            continue;
        }
        if argmax_by_key(w.iter().copied()) != nearest {
            cold_row_mismatches.push(i);
        }
    }
    let plurality_winner = argmax_by_key(first_prefs.iter().map(|&c| c as f64));
    let cold_discrete_winner = candidates.nearest(cold.centroid);

    let hot = compute_weights(matrix, candidates, HOT_SIGMA)?;
    let uniform = 1.0 / k as f64;
    let hot_max_weight_deviation = hot
        .mean_weights
        .iter()
        .map(|w| (w - uniform).abs())
        .fold(0.0, f64::max);
    let hot_centroid_gap = euclidean_distance(hot.centroid, candidates.mean_position());

    Ok(LimitReport {
        tied_rows,
        cold_row_mismatches,
        cold_discrete_winner,
        plurality_winner,
        hot_max_weight_deviation,
        hot_centroid_gap,
    })
}
