use crate::ballots::BallotProfile;
use crate::candidates::{argmax_by_key, CandidateSet};

use super::result::{ElectionResult, Trace};

fn elect_max(name: &str, totals: Vec<f64>, candidates: &CandidateSet) -> ElectionResult {
    let winner = argmax_by_key(totals.iter().copied());
    ElectionResult::single_winner(name, winner, candidates, Trace::Tally { totals })
}

/// Each voter gives `K - rank` points.
pub fn run_borda(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let k = profile.n_candidates();
    let mut points = vec![0u64; k];
    for i in 0..profile.n_voters() {
        for (c, &r) in profile.ranks(i).iter().enumerate() {
            points[c] += (k as u64) - u64::from(r);
        }
    }
    elect_max("Borda Count", points.into_iter().map(|p| p as f64).collect(), candidates)
}

pub fn run_approval(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let mut approvals = vec![0u64; profile.n_candidates()];
    for i in 0..profile.n_voters() {
        for (c, &a) in profile.approvals(i).iter().enumerate() {
            approvals[c] += u64::from(a);
        }
    }
    elect_max("Approval", approvals.into_iter().map(|a| a as f64).collect(), candidates)
}

/// Highest mean normalised score wins.
pub fn run_score(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let n = profile.n_voters() as f64;
    let mut sums = vec![0.0; profile.n_candidates()];
    for i in 0..profile.n_voters() {
        for (sum, s) in sums.iter_mut().zip(profile.scores(i)) {
            *sum += s;
        }
    }
    elect_max("Score", sums.into_iter().map(|s| s / n).collect(), candidates)
}
