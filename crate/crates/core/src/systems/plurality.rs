use crate::ballots::BallotProfile;
use crate::candidates::{argmax_by_key, CandidateSet};

use super::result::{ElectionResult, Round, Trace};

pub fn run_plurality(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let counts = profile.first_preference_counts();
    let winner = argmax_by_key(counts.iter().map(|&c| c as f64));
    ElectionResult::single_winner(
        "Plurality",
        winner,
        candidates,
        Trace::Tally {
            totals: counts.iter().map(|&c| c as f64).collect(),
        },
    )
}

/// Majority short-circuit, otherwise a pairwise runoff between the two
/// largest first-round vote-getters.
pub fn run_two_round(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let n = profile.n_voters();
    let k = profile.n_candidates();
    let counts = profile.first_preference_counts();
    let all: Vec<usize> = (0..k).collect();
    let first = Round {
        remaining: all,
        totals: counts.clone(),
        eliminated: None,
    };

    let leader = argmax_by_key(counts.iter().map(|&c| c as f64));
    if k == 1 || 2 * counts[leader] > n {
        return ElectionResult::single_winner(
            "Two-Round Runoff",
            leader,
            candidates,
            Trace::Rounds { rounds: vec![first] },
        );
    }

    let runner_up = argmax_by_key(
        counts
            .iter()
            .enumerate()
            .map(|(c, &v)| if c == leader { f64::NEG_INFINITY } else { v as f64 }),
    );
    let (a, b) = (leader.min(runner_up), leader.max(runner_up));
    let a_votes = (0..n).filter(|&i| profile.prefers(i, a, b)).count();
    let b_votes = n - a_votes;
    let winner = if b_votes > a_votes { b } else { a };

    let mut runoff_totals = vec![0; k];
    runoff_totals[a] = a_votes;
    runoff_totals[b] = b_votes;
    let runoff = Round {
        remaining: vec![a, b],
        totals: runoff_totals,
        eliminated: Some(if winner == a { b } else { a }),
    };
    ElectionResult::single_winner(
        "Two-Round Runoff",
        winner,
        candidates,
        Trace::Rounds {
            rounds: vec![first, runoff],
        },
    )
}
