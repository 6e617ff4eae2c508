use crate::ballots::BallotProfile;
use crate::candidates::CandidateSet;

use super::result::{ElectionResult, Round, Trace};

/// Instant runoff: repeatedly drop the remaining candidate with the fewest
/// first preferences (lowest index on ties) until one is left.
pub fn run_irv(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let n = profile.n_voters();
    let k = profile.n_candidates();
    let mut active = vec![true; k];
    // Position in each voter's order of their current top remaining choice.
    let mut cursor = vec![0usize; n];
    let mut rounds = Vec::with_capacity(k);

    loop {
        let mut totals = vec![0usize; k];
        for (i, c) in cursor.iter_mut().enumerate() {
            let order = profile.order(i);
            while !active[order[*c]] {
                *c += 1;
            }
            totals[order[*c]] += 1;
        }
        let remaining: Vec<usize> = (0..k).filter(|&c| active[c]).collect();
        if remaining.len() == 1 {
            rounds.push(Round {
                remaining: remaining.clone(),
                totals,
                eliminated: None,
            });
            return ElectionResult::single_winner("IRV", remaining[0], candidates, Trace::Rounds { rounds });
        }
        let eliminated = *remaining
            .iter()
            .min_by_key(|&&c| (totals[c], c))
            .expect("at least two candidates remain");
        active[eliminated] = false;
        rounds.push(Round {
            remaining,
            totals,
            eliminated: Some(eliminated),
        });
    }
}
