use std::collections::BTreeMap;

use serde::Serialize;

use crate::candidates::CandidateSet;
use crate::spatial::Point2;

/// Round-by-round record kept alongside every result.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    /// Per-candidate totals of a single count (votes, points, approvals, mean scores).
    Tally { totals: Vec<f64> },
    /// Successive counts; `remaining` lists the candidates still standing in
    /// that round and `totals` is indexed by candidate.
    Rounds { rounds: Vec<Round> },
    Pairwise {
        wins: Vec<Vec<usize>>,
        /// Absent when a Condorcet winner was elected in the first stage.
        strengths: Option<Vec<Vec<usize>>>,
    },
    Seats {
        vote_shares: Vec<f64>,
        seats: Vec<usize>,
        district_seats: Option<Vec<usize>>,
    },
    Fractional {
        sigma: f64,
        mean_weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Round {
    pub remaining: Vec<usize>,
    pub totals: Vec<usize>,
    pub eliminated: Option<usize>,
}

/// Outcome of one electoral system on one electorate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElectionResult {
    pub system_name: String,
    /// Winner position for single-winner systems, median legislator for
    /// seat-based systems, weighted centroid for the fractional ballot.
    pub outcome_position: Point2,
    /// Seat-share-weighted centroid; present for proportional systems.
    pub centroid_position: Option<Point2>,
    /// Candidate index to share of legislative power; sums to 1.
    pub seat_shares: BTreeMap<usize, f64>,
    pub winner_indices: Vec<usize>,
    pub is_pr: bool,
    pub trace: Trace,
}

impl ElectionResult {
    /// Single-winner result with all power on `winner`.
    pub fn single_winner(
        system_name: impl Into<String>,
        winner: usize,
        candidates: &CandidateSet,
        trace: Trace,
    ) -> Self {
        Self {
            system_name: system_name.into(),
            outcome_position: candidates.position(winner),
            centroid_position: None,
            seat_shares: BTreeMap::from([(winner, 1.0)]),
            winner_indices: vec![winner],
            is_pr: false,
            trace,
        }
    }

    pub fn winner(&self) -> Option<usize> {
        match self.winner_indices.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }
}

/// Share-weighted average of candidate positions.
pub fn seat_share_centroid(seat_shares: &BTreeMap<usize, f64>, candidates: &CandidateSet) -> Point2 {
    let total: f64 = seat_shares.values().sum();
    seat_shares
        .iter()
        .fold(Point2::default(), |acc, (&k, &s)| acc + candidates.position(k) * (s / total))
}
