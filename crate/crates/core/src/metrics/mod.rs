//! Outcome metrics measured against the geometric median of the electorate,
//! plus the single-run and Monte Carlo drivers.

mod monte_carlo;
mod simulation;

pub use monte_carlo::{percentile, run_monte_carlo, trial_seed, MonteCarloSettings, MonteCarloSummary, SystemDistribution, TRIAL_SEED_STRIDE};
pub use simulation::{run_simulation, SimulationSettings, SimulationTable, SystemRecord};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::candidates::CandidateSet;
use crate::electorate::Electorate;
use crate::error::{Error, Result};
use crate::spatial::{euclidean_distance, Point2};
use crate::systems::ElectionResult;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElectionMetrics {
    /// Distance from the outcome to the geometric median (δ).
    pub distance_to_median: f64,
    /// Fraction of voters strictly closer to the outcome than to every other
    /// candidate. Candidates sitting exactly on the outcome are not counted
    /// as rivals, so for a non-candidate outcome every candidate is.
    pub majority_satisfaction: f64,
    pub mean_voter_distance: f64,
    pub worst_voter_distance: f64,
    pub distance_gini: f64,
    pub median_legislator_delta: Option<f64>,
    pub centroid_delta: Option<f64>,
    /// Median-legislator δ minus centroid δ.
    pub artefact_gap: Option<f64>,
}

/// Gini coefficient as the relative mean absolute difference,
/// `Σ_ij |x_i − x_j| / (2 n² mean)`. All-zero input gives 0.
pub fn gini(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidGiniInput("an empty sequence".into()));
    }
    if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidGiniInput(format!("value {v}")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let total: f64 = sorted.iter().sum();
    if total == 0.0 {
        return Ok(0.0);
    }
    // Σ_ij |x_i − x_j| = 2 Σ_i (2i − n − 1) x_(i) over ascending order, i from 1.
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, x)| (2.0 * (i as f64 + 1.0) - n - 1.0) * x)
        .sum();
    Ok((weighted / (n * total)).clamp(0.0, 1.0))
}

/// Position of the seated candidate at which the cumulative seat share,
/// walked in ascending economic-axis order, first reaches one half.
pub fn median_legislator(seat_shares: &BTreeMap<usize, f64>, candidates: &CandidateSet) -> Result<Point2> {
    let mut seated: Vec<(usize, f64)> = seat_shares
        .iter()
        .filter(|(_, s)| **s > 0.0)
        .map(|(k, s)| (*k, *s))
        .collect();
    if seated.is_empty() {
        return Err(Error::InvalidAllocation("no seated candidates".into()));
    }
    seated.sort_by(|a, b| {
        candidates
            .position(a.0)
            .x1
            .total_cmp(&candidates.position(b.0).x1)
            .then(a.0.cmp(&b.0))
    });
    let total: f64 = seated.iter().map(|(_, s)| s).sum();
    let mut cumulative = 0.0;
    for &(k, s) in &seated {
        cumulative += s / total;
        if cumulative >= 0.5 - 1e-12 {
            return Ok(candidates.position(k));
        }
    }
    Ok(candidates.position(seated[seated.len() - 1].0))
}

pub fn evaluate(
    result: &ElectionResult,
    electorate: &Electorate,
    candidates: &CandidateSet,
    median: Point2,
) -> ElectionMetrics {
    let outcome = result.outcome_position;
    let distance_to_median = euclidean_distance(outcome, median);

    let rivals: Vec<Point2> = candidates
        .positions()
        .iter()
        .copied()
        .filter(|p| *p != outcome)
        .collect();
    let distances: Vec<f64> = electorate
        .voters
        .iter()
        .map(|v| euclidean_distance(*v, outcome))
        .collect();
    let satisfied = electorate
        .voters
        .iter()
        .zip(&distances)
        .filter(|(v, d)| rivals.iter().all(|r| **d < euclidean_distance(**v, *r)))
        .count();

    let n = distances.len() as f64;
    let mean_voter_distance = distances.iter().sum::<f64>() / n;
    let worst_voter_distance = distances.iter().copied().fold(0.0, f64::max);
    let distance_gini = gini(&distances).expect("distances are finite and non-negative");

    let (median_legislator_delta, centroid_delta, artefact_gap) = if result.is_pr {
        let legislator = median_legislator(&result.seat_shares, candidates)
            .expect("proportional results carry seat shares");
        let ml = euclidean_distance(legislator, median);
        let c = euclidean_distance(result.centroid_position.unwrap_or(outcome), median);
        (Some(ml), Some(c), Some(ml - c))
    } else {
        (None, None, None)
    };

    ElectionMetrics {
        distance_to_median,
        majority_satisfaction: satisfied as f64 / n,
        mean_voter_distance,
        worst_voter_distance,
        distance_gini,
        median_legislator_delta,
        centroid_delta,
        artefact_gap,
    }
}
