//! Condorcet–Schulze: direct pairwise dominance first, strongest beatpaths
//! (widest paths over the direct-win graph) when there is no Condorcet winner.

use serde::Serialize;

use crate::ballots::BallotProfile;
use crate::candidates::CandidateSet;

use super::result::{ElectionResult, Trace};

/// `wins[a][b]` counts voters ranking `a` above `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseMatrix {
    pub n_voters: usize,
    pub wins: Vec<Vec<usize>>,
}

impl PairwiseMatrix {
    pub fn n_candidates(&self) -> usize {
        self.wins.len()
    }

    /// `a` beats `b` directly: a strict majority of all voters prefer `a`.
    pub fn beats(&self, a: usize, b: usize) -> bool {
        2 * self.wins[a][b] > self.n_voters
    }

    pub fn condorcet_winner(&self) -> Option<usize> {
        let k = self.n_candidates();
        (0..k).find(|&a| (0..k).all(|b| a == b || self.beats(a, b)))
    }
}

/// `strengths[a][b]` is the weakest link of the strongest beatpath from `a`
/// to `b`, or 0 when no beatpath exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeatpathMatrix {
    pub strengths: Vec<Vec<usize>>,
}

pub fn compute_pairwise(profile: &BallotProfile) -> PairwiseMatrix {
    let k = profile.n_candidates();
    let mut wins = vec![vec![0usize; k]; k];
    for i in 0..profile.n_voters() {
        let order = profile.order(i);
        for (pos, &a) in order.iter().enumerate() {
            for &b in &order[pos + 1..] {
                wins[a][b] += 1;
            }
        }
    }
    PairwiseMatrix {
        n_voters: profile.n_voters(),
        wins,
    }
}

/// Widest paths over the graph whose edges are the direct wins, weighted by
/// the winning side's count.
pub fn beatpath_strengths(pairwise: &PairwiseMatrix) -> BeatpathMatrix {
    let k = pairwise.n_candidates();
    let mut p = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a != b && pairwise.beats(a, b) {
                p[a][b] = pairwise.wins[a][b];
            }
        }
    }
    for via in 0..k {
        for a in 0..k {
            if a == via {
                continue;
            }
            for b in 0..k {
                if b == via || b == a {
                    continue;
                }
                let through = p[a][via].min(p[via][b]);
                if through > p[a][b] {
                    p[a][b] = through;
                }
            }
        }
    }
    BeatpathMatrix { strengths: p }
}

/// Lowest-index candidate whose beatpaths are at least as strong as every
/// opponent's path back.
pub fn schulze_winner(strengths: &BeatpathMatrix) -> usize {
    let p = &strengths.strengths;
    let k = p.len();
    (0..k)
        .find(|&a| (0..k).all(|b| a == b || p[a][b] >= p[b][a]))
        .expect("the beatpath relation always has a maximal element")
}

pub fn run_schulze(profile: &BallotProfile, candidates: &CandidateSet) -> ElectionResult {
    let pairwise = compute_pairwise(profile);
    if let Some(w) = pairwise.condorcet_winner() {
        return ElectionResult::single_winner(
            "Condorcet-Schulze",
            w,
            candidates,
            Trace::Pairwise {
                wins: pairwise.wins,
                strengths: None,
            },
        );
    }
    let strengths = beatpath_strengths(&pairwise);
    let winner = schulze_winner(&strengths);
    ElectionResult::single_winner(
        "Condorcet-Schulze",
        winner,
        candidates,
        Trace::Pairwise {
            wins: pairwise.wins,
            strengths: Some(strengths.strengths),
        },
    )
}
