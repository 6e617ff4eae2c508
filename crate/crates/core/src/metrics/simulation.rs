use serde::Serialize;

use crate::ballots::{build_preference_matrix, derive_ballots, BallotConfig};
use crate::electorate::{sample_electorate, Electorate};
use crate::error::Result;
use crate::scenario::Scenario;
use crate::spatial::{diagnostics_with, DistributionDiagnostics, WeiszfeldOptions};
use crate::systems::{ElectionInput, ElectionResult, SystemRegistry};

use super::{evaluate, ElectionMetrics};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSettings {
    pub seed: u64,
    pub ballots: BallotConfig,
    /// Overrides the scenario's voter count when set.
    pub n_voters: Option<usize>,
    pub weiszfeld: WeiszfeldOptions,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            seed: 42,
            ballots: BallotConfig::default(),
            n_voters: None,
            weiszfeld: WeiszfeldOptions::default(),
        }
    }
}

impl SimulationSettings {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemRecord {
    pub result: ElectionResult,
    pub metrics: ElectionMetrics,
}

/// Every registered system evaluated on one sampled electorate.
#[derive(Debug, Clone, Serialize)]
pub struct SimulationTable {
    pub scenario: String,
    pub seed: u64,
    pub n_voters: usize,
    pub approval_threshold: f64,
    pub diagnostics: DistributionDiagnostics,
    pub records: Vec<SystemRecord>,
    #[serde(skip)]
    pub electorate: Electorate,
}

impl SimulationTable {
    pub fn record(&self, system: &str) -> Option<&SystemRecord> {
        self.records.iter().find(|r| r.result.system_name == system)
    }

    pub fn delta(&self, system: &str) -> Option<f64> {
        self.record(system).map(|r| r.metrics.distance_to_median)
    }

    /// Smallest δ over all systems.
    pub fn best_delta(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.metrics.distance_to_median)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Samples one electorate, derives one ballot profile, runs every system of
/// the registry and scores all of them against one shared geometric median.
pub fn run_simulation(
    scenario: &Scenario,
    registry: &SystemRegistry,
    settings: &SimulationSettings,
) -> Result<SimulationTable> {
    let n = settings.n_voters.unwrap_or(scenario.n_voters);
    let electorate = sample_electorate(&scenario.electorate, n, settings.seed)?;
    let diagnostics = diagnostics_with(&electorate.voters, settings.weiszfeld)?;
    let profile = derive_ballots(
        build_preference_matrix(&electorate, &scenario.candidates),
        settings.ballots,
    );
    let input = ElectionInput {
        profile: &profile,
        candidates: &scenario.candidates,
        electorate: &electorate,
    };
    let records = registry
        .run_all(&input)
        .into_iter()
        .map(|result| {
            let metrics = evaluate(&result, &electorate, &scenario.candidates, diagnostics.geometric_median);
            SystemRecord { result, metrics }
        })
        .collect();

    Ok(SimulationTable {
        scenario: scenario.name.clone(),
        seed: settings.seed,
        n_voters: n,
        approval_threshold: settings.ballots.approval_threshold,
        diagnostics,
        records,
        electorate,
    })
}
