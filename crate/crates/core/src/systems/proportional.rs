//! Seat-based systems. Every candidate is treated as a one-member party
//! whose vote share is its share of plurality ballots.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ballots::BallotProfile;
use crate::candidates::{argmax_by_key, CandidateSet};
use crate::electorate::Electorate;
use crate::error::{Error, Result};
use crate::metrics::median_legislator;

use super::result::{seat_share_centroid, ElectionResult, Trace};

pub const DEFAULT_TOTAL_SEATS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeatAllocation {
    /// Seats per candidate index.
    pub seats: Vec<usize>,
    pub total_seats: usize,
}

/// Highest-averages allocation: each of the `total_seats` seats goes to the
/// party maximising `share / (seats_so_far + 1)`, lowest index on ties.
pub fn allocate_dhondt(vote_shares: &[f64], total_seats: usize) -> Result<SeatAllocation> {
    if vote_shares.is_empty() {
        return Err(Error::InvalidAllocation("no parties".into()));
    }
    if let Some(v) = vote_shares.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidAllocation(format!("invalid vote share {v}")));
    }
    if total_seats == 0 {
        return Err(Error::InvalidAllocation("total seats must be at least 1".into()));
    }
    let mut seats = vec![0usize; vote_shares.len()];
    for _ in 0..total_seats {
        let next = argmax_by_key(
            vote_shares
                .iter()
                .zip(&seats)
                .map(|(&v, &s)| v / (s as f64 + 1.0)),
        );
        seats[next] += 1;
    }
    Ok(SeatAllocation { seats, total_seats })
}

fn vote_shares(profile: &BallotProfile) -> Vec<f64> {
    let n = profile.n_voters() as f64;
    profile
        .first_preference_counts()
        .into_iter()
        .map(|c| c as f64 / n)
        .collect()
}

fn shares_from_seats(seats: &[usize]) -> BTreeMap<usize, f64> {
    let total: usize = seats.iter().sum();
    seats
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 0)
        .map(|(k, &s)| (k, s as f64 / total as f64))
        .collect()
}

fn seated_result(
    name: &str,
    seats: &[usize],
    candidates: &CandidateSet,
    trace: Trace,
) -> ElectionResult {
    let seat_shares = shares_from_seats(seats);
    let outcome_position =
        median_legislator(&seat_shares, candidates).expect("at least one seat is allocated");
    ElectionResult {
        system_name: name.to_string(),
        outcome_position,
        centroid_position: Some(seat_share_centroid(&seat_shares, candidates)),
        winner_indices: seat_shares.keys().copied().collect(),
        seat_shares,
        is_pr: true,
        trace,
    }
}

pub fn run_party_list_pr(profile: &BallotProfile, candidates: &CandidateSet, total_seats: usize) -> ElectionResult {
    let shares = vote_shares(profile);
    let allocation = allocate_dhondt(&shares, total_seats).expect("plurality shares are a valid allocation input");
    let trace = Trace::Seats {
        vote_shares: shares,
        seats: allocation.seats.clone(),
        district_seats: None,
    };
    seated_result("Party-List PR (D'Hondt)", &allocation.seats, candidates, trace)
}

/// District winners under the sort-and-block rule: voters are ordered by
/// their economic coordinate (index on ties) and cut into `n_districts`
/// contiguous blocks of near-equal size; each block elects its plurality
/// winner. Blocks that end up empty (fewer voters than districts) award
/// no seat.
pub fn mmp_districts(electorate: &Electorate, profile: &BallotProfile, n_districts: usize) -> Vec<usize> {
    let n = electorate.len();
    let k = profile.n_candidates();
    let mut by_x1: Vec<usize> = (0..n).collect();
    by_x1.sort_by(|&a, &b| electorate.voters[a].x1.total_cmp(&electorate.voters[b].x1));

    let choices = profile.plurality_choices();
    let mut wins = vec![0usize; k];
    for d in 0..n_districts {
        let block = &by_x1[d * n / n_districts..(d + 1) * n / n_districts];
        if block.is_empty() {
            continue;
        }
        let mut counts = vec![0usize; k];
        for &i in block {
            counts[choices[i]] += 1;
        }
        wins[argmax_by_key(counts.iter().map(|&c| c as f64))] += 1;
    }
    wins
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MmpAllocation {
    pub district: Vec<usize>,
    pub list: Vec<usize>,
    /// May exceed the nominal seat count when a party holds an overhang.
    pub realised_total: usize,
}

impl MmpAllocation {
    pub fn seats(&self) -> Vec<usize> {
        self.district.iter().zip(&self.list).map(|(d, l)| d + l).collect()
    }
}

/// Compensatory list seats on top of the district results.
///
/// Each party first gets `max(0, floor(v·S) − districts)` list seats. Seats
/// still unfilled after that go one each to the parties without an overhang,
/// by largest remainder of `v·S` (lowest index on ties).
pub fn allocate_mmp(vote_shares: &[f64], district: &[usize], total_seats: usize) -> Result<MmpAllocation> {
    if vote_shares.is_empty() || vote_shares.len() != district.len() {
        return Err(Error::InvalidAllocation(format!(
            "{} vote shares for {} district tallies",
            vote_shares.len(),
            district.len()
        )));
    }
    let s = total_seats as f64;
    let entitlement: Vec<usize> = vote_shares.iter().map(|v| (v * s).floor() as usize).collect();
    let mut list: Vec<usize> = entitlement
        .iter()
        .zip(district)
        .map(|(&e, &d)| e.saturating_sub(d))
        .collect();

    let filled: usize = district.iter().sum::<usize>() + list.iter().sum::<usize>();
    let leftover = total_seats.saturating_sub(filled);
    if leftover > 0 {
        let mut eligible: Vec<usize> = (0..vote_shares.len())
            .filter(|&k| district[k] <= entitlement[k])
            .collect();
        let remainder = |k: usize| vote_shares[k] * s - entitlement[k] as f64;
        eligible.sort_by(|&a, &b| remainder(b).total_cmp(&remainder(a)).then(a.cmp(&b)));
        for &k in eligible.iter().cycle().take(leftover) {
            list[k] += 1;
        }
    }

    let realised_total = district.iter().sum::<usize>() + list.iter().sum::<usize>();
    Ok(MmpAllocation {
        district: district.to_vec(),
        list,
        realised_total,
    })
}

pub fn run_mmp(
    profile: &BallotProfile,
    candidates: &CandidateSet,
    electorate: &Electorate,
    total_seats: usize,
) -> ElectionResult {
    let shares = vote_shares(profile);
    let district = mmp_districts(electorate, profile, total_seats / 2);
    let allocation = allocate_mmp(&shares, &district, total_seats).expect("shapes agree");
    let seats = allocation.seats();
    let trace = Trace::Seats {
        vote_shares: shares,
        seats: seats.clone(),
        district_seats: Some(allocation.district),
    };
    seated_result("MMP", &seats, candidates, trace)
}
