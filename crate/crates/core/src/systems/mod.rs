//! Electoral systems behind a common trait, plus the name-keyed registry
//! the simulation and CLI select from.

mod irv;
mod plurality;
mod positional;
mod proportional;
mod result;
mod schulze;

pub use irv::run_irv;
pub use plurality::{run_plurality, run_two_round};
pub use positional::{run_approval, run_borda, run_score};
pub use proportional::{
    allocate_dhondt, allocate_mmp, mmp_districts, run_mmp, run_party_list_pr, MmpAllocation, SeatAllocation,
    DEFAULT_TOTAL_SEATS,
};
pub use result::{seat_share_centroid, ElectionResult, Round, Trace};
pub use schulze::{beatpath_strengths, compute_pairwise, run_schulze, schulze_winner, BeatpathMatrix, PairwiseMatrix};

use crate::ballots::BallotProfile;
use crate::candidates::CandidateSet;
use crate::electorate::Electorate;
use crate::error::{Error, Result};
use crate::fractional::{FractionalBallot, FractionalVariant};

/// Everything a system may read. Systems never mutate it.
#[derive(Debug, Clone, Copy)]
pub struct ElectionInput<'a> {
    pub profile: &'a BallotProfile,
    pub candidates: &'a CandidateSet,
    pub electorate: &'a Electorate,
}

pub trait ElectoralSystem: Send + Sync {
    fn name(&self) -> &str;

    fn run(&self, input: &ElectionInput<'_>) -> ElectionResult;
}

macro_rules! simple_system {
    ($ty:ident, $name:literal, |$input:ident| $body:expr) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $ty;

        impl ElectoralSystem for $ty {
            fn name(&self) -> &str {
                $name
            }

            fn run(&self, $input: &ElectionInput<'_>) -> ElectionResult {
                let mut result = $body;
                result.system_name = self.name().to_string();
                result
            }
        }
    };
}

simple_system!(Plurality, "Plurality", |input| run_plurality(input.profile, input.candidates));
simple_system!(TwoRound, "Two-Round Runoff", |input| run_two_round(input.profile, input.candidates));
simple_system!(InstantRunoff, "IRV", |input| run_irv(input.profile, input.candidates));
simple_system!(Borda, "Borda Count", |input| run_borda(input.profile, input.candidates));
simple_system!(Approval, "Approval", |input| run_approval(input.profile, input.candidates));
simple_system!(Score, "Score", |input| run_score(input.profile, input.candidates));
simple_system!(Schulze, "Condorcet-Schulze", |input| run_schulze(input.profile, input.candidates));

#[derive(Debug, Clone, Copy)]
pub struct PartyListPr {
    pub total_seats: usize,
}

impl ElectoralSystem for PartyListPr {
    fn name(&self) -> &str {
        "Party-List PR (D'Hondt)"
    }

    fn run(&self, input: &ElectionInput<'_>) -> ElectionResult {
        let mut r = run_party_list_pr(input.profile, input.candidates, self.total_seats);
        r.system_name = self.name().to_string();
        r
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Mmp {
    pub total_seats: usize,
}

impl ElectoralSystem for Mmp {
    fn name(&self) -> &str {
        "MMP"
    }

    fn run(&self, input: &ElectionInput<'_>) -> ElectionResult {
        let mut r = run_mmp(input.profile, input.candidates, input.electorate, self.total_seats);
        r.system_name = self.name().to_string();
        r
    }
}

pub const DEFAULT_SIGMA_GRID: [f64; 3] = [0.1, 0.3, 1.0];

/// Ordered collection of systems, addressable by name.
///
/// The standard order is the nine conventional systems (plurality, two-round
/// runoff, IRV, Borda, approval, score, Schulze, D'Hondt list PR, MMP),
/// followed by the fractional ballot in its discrete variant for each σ in
/// ascending grid order, then the continuous variant in the same σ order.
#[derive(Default)]
pub struct SystemRegistry {
    entries: Vec<Box<dyn ElectoralSystem>>,
}

impl SystemRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The nine standard systems plus both fractional variants at every σ of
    /// `sigma_grid`. With the default grid this holds fifteen systems.
    pub fn standard(sigma_grid: &[f64], total_seats: usize) -> Result<Self> {
        let mut registry = Self::new();
        registry.register(Box::new(Plurality))?;
        registry.register(Box::new(TwoRound))?;
        registry.register(Box::new(InstantRunoff))?;
        registry.register(Box::new(Borda))?;
        registry.register(Box::new(Approval))?;
        registry.register(Box::new(Score))?;
        registry.register(Box::new(Schulze))?;
        registry.register(Box::new(PartyListPr { total_seats }))?;
        registry.register(Box::new(Mmp { total_seats }))?;
        for variant in [FractionalVariant::Discrete, FractionalVariant::Continuous] {
            for &sigma in sigma_grid {
                registry.register(Box::new(FractionalBallot::new(sigma, variant)?))?;
            }
        }
        Ok(registry)
    }

    /// Appends a system. Names must be unique.
    pub fn register(&mut self, system: Box<dyn ElectoralSystem>) -> Result<()> {
        if self.get(system.name()).is_some() {
            return Err(Error::DuplicateSystem(system.name().to_string()));
        }
        self.entries.push(system);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn ElectoralSystem> {
        self.entries
            .iter()
            .find(|s| s.name().eq_ignore_ascii_case(name))
            .map(|s| s.as_ref())
    }

    /// Keeps only the named systems, in registry order.
    pub fn retain_named(&mut self, names: &[String]) -> Result<()> {
        if let Some(missing) = names.iter().find(|n| self.get(n).is_none()) {
            return Err(Error::UnknownSystem(missing.clone()));
        }
        self.entries
            .retain(|s| names.iter().any(|n| n.eq_ignore_ascii_case(s.name())));
        Ok(())
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ElectoralSystem> {
        self.entries.iter().map(|s| s.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn run_all(&self, input: &ElectionInput<'_>) -> Vec<ElectionResult> {
        self.iter().map(|s| s.run(input)).collect()
    }
}

impl std::fmt::Debug for SystemRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// The default fifteen-system registry.
pub fn system_registry() -> SystemRegistry {
    SystemRegistry::standard(&DEFAULT_SIGMA_GRID, DEFAULT_TOTAL_SEATS)
        .expect("default registry is valid")
}
