//! Sincere ballots derived once from the voter/candidate distance matrix.
//!
//! Every electoral system reads the same [`BallotProfile`]; none of them
//! recomputes distances.

use crate::candidates::{argmax_by_key, CandidateSet};
use crate::electorate::Electorate;
use crate::error::{Error, Result};
use crate::spatial::euclidean_distance;

/// Row-major `n × K` matrix of voter-to-candidate distances.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceMatrix {
    n_voters: usize,
    n_candidates: usize,
    distances: Vec<f64>,
}

impl PreferenceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_candidates = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || n_candidates == 0 {
            return Err(Error::InvalidBallotConfig("preference matrix must be non-empty".into()));
        }
        let mut distances = Vec::with_capacity(rows.len() * n_candidates);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_candidates {
                return Err(Error::InvalidBallotConfig(format!(
                    "row {i} has {} entries, expected {n_candidates}",
                    row.len()
                )));
            }
            if let Some(d) = row.iter().find(|d| !d.is_finite() || **d < 0.0) {
                return Err(Error::InvalidBallotConfig(format!("row {i} has invalid distance {d}")));
            }
            distances.extend_from_slice(row);
        }
        Ok(Self {
            n_voters: rows.len(),
            n_candidates,
            distances,
        })
    }

    pub fn n_voters(&self) -> usize {
        self.n_voters
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.distances[i * self.n_candidates..(i + 1) * self.n_candidates]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.distances.chunks_exact(self.n_candidates)
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.distances[i * self.n_candidates + k]
    }
}

pub fn build_preference_matrix(electorate: &Electorate, candidates: &CandidateSet) -> PreferenceMatrix {
    let k = candidates.len();
    let mut distances = Vec::with_capacity(electorate.len() * k);
    for v in &electorate.voters {
        distances.extend(candidates.positions().iter().map(|x| euclidean_distance(*v, *x)));
    }
    PreferenceMatrix {
        n_voters: electorate.len(),
        n_candidates: k,
        distances,
    }
}

pub const DEFAULT_APPROVAL_THRESHOLD: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallotConfig {
    /// Multiplier τ on each voter's nearest distance: approve `k` iff
    /// `d_ik <= τ · min_j d_ij`.
    pub approval_threshold: f64,
}

impl Default for BallotConfig {
    fn default() -> Self {
        Self {
            approval_threshold: DEFAULT_APPROVAL_THRESHOLD,
        }
    }
}

impl BallotConfig {
    pub fn new(approval_threshold: f64) -> Result<Self> {
        if !(approval_threshold >= 1.0) || !approval_threshold.is_finite() {
            return Err(Error::InvalidBallotConfig(format!(
                "approval threshold must be a finite value >= 1, got {approval_threshold}"
            )));
        }
        Ok(Self { approval_threshold })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallotProfile {
    pub distances: PreferenceMatrix,
    pub config: BallotConfig,
    /// Ranks `r_ik` in `1..=K`, row-major.
    rankings: Vec<u32>,
    /// Candidate indices in preference order, row-major.
    orders: Vec<usize>,
    scores: Vec<f64>,
    approvals: Vec<bool>,
    plurality_choice: Vec<usize>,
}

impl BallotProfile {
    pub fn n_voters(&self) -> usize {
        self.distances.n_voters()
    }

    pub fn n_candidates(&self) -> usize {
        self.distances.n_candidates()
    }

    fn span(&self, i: usize) -> std::ops::Range<usize> {
        let k = self.n_candidates();
        i * k..(i + 1) * k
    }

    pub fn ranks(&self, i: usize) -> &[u32] {
        &self.rankings[self.span(i)]
    }

    pub fn rank(&self, i: usize, k: usize) -> u32 {
        self.rankings[i * self.n_candidates() + k]
    }

    /// Voter `i`'s candidates from most to least preferred.
    pub fn order(&self, i: usize) -> &[usize] {
        &self.orders[self.span(i)]
    }

    pub fn scores(&self, i: usize) -> &[f64] {
        &self.scores[self.span(i)]
    }

    pub fn approvals(&self, i: usize) -> &[bool] {
        &self.approvals[self.span(i)]
    }

    pub fn plurality_choices(&self) -> &[usize] {
        &self.plurality_choice
    }

    /// First-preference counts per candidate.
    pub fn first_preference_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_candidates()];
        for &c in &self.plurality_choice {
            counts[c] += 1;
        }
        counts
    }

    /// True when voter `i` ranks `a` above `b`.
    pub fn prefers(&self, i: usize, a: usize, b: usize) -> bool {
        self.rank(i, a) < self.rank(i, b)
    }
}

pub fn derive_ballots(matrix: PreferenceMatrix, config: BallotConfig) -> BallotProfile {
    let n = matrix.n_voters();
    let k = matrix.n_candidates();
    let tau = config.approval_threshold;
    let mut rankings = vec![0u32; n * k];
    let mut orders = Vec::with_capacity(n * k);
    let mut scores = Vec::with_capacity(n * k);
    let mut approvals = Vec::with_capacity(n * k);
    let mut plurality_choice = Vec::with_capacity(n);

    for (i, row) in matrix.rows().enumerate() {
        let mut order: Vec<usize> = (0..k).collect();
        // Stable sort keeps the lowest index first among equal distances.
        order.sort_by(|&a, &b| row[a].total_cmp(&row[b]));
        for (pos, &c) in order.iter().enumerate() {
            rankings[i * k + c] = pos as u32 + 1;
        }
        plurality_choice.push(order[0]);

        let d_min = row[order[0]];
        let d_max = row[order[k - 1]];
        let spread = d_max - d_min;
        scores.extend(row.iter().map(|&d| {
            if spread > 0.0 {
                1.0 - (d - d_min) / spread
            } else {
                1.0
            }
        }));
        approvals.extend(row.iter().map(|&d| d <= tau * d_min));
        orders.extend(order);
    }

    BallotProfile {
        distances: matrix,
        config,
        rankings,
        orders,
        scores,
        approvals,
        plurality_choice,
    }
}

/// Builds a profile whose rankings follow the given preference orders.
/// Distances are synthetic (`0.1 × rank`), so scores and approvals follow
/// the ranks as well.
pub fn profile_from_orders(orders: &[Vec<usize>], config: BallotConfig) -> Result<BallotProfile> {
    let k = orders.first().map(Vec::len).unwrap_or(0);
    let rows = orders
        .iter()
        .map(|order| {
            let mut row = vec![f64::NAN; k];
            for (pos, &c) in order.iter().enumerate() {
                if c >= k {
                    return Err(Error::InvalidBallotConfig(format!("candidate {c} out of range")));
                }
                row[c] = 0.1 * (pos + 1) as f64;
            }
            if order.len() != k || row.iter().any(|d| d.is_nan()) {
                return Err(Error::InvalidBallotConfig(format!(
                    "order {order:?} is not a permutation of 0..{k}"
                )));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(derive_ballots(PreferenceMatrix::from_rows(rows)?, config))
}

/// Index of the highest-scoring candidate for voter `i`.
pub fn best_scored(profile: &BallotProfile, i: usize) -> usize {
    argmax_by_key(profile.scores(i).iter().copied())
}
