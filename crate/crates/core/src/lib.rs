//! Spatial simulation of electoral systems.
//!
//! Voters and candidates live in the unit square. Each electoral system maps a
//! sincere ballot profile to an outcome position, and every outcome is scored
//! by its distance to the geometric median of the electorate.
//!
//! ```no_run
//! use electoral_sim::{builtin_scenario, run_simulation, system_registry, SimulationSettings};
//!
//! let scenario = builtin_scenario("polarized_bimodal").unwrap();
//! let table = run_simulation(&scenario, &system_registry(), &SimulationSettings::default()).unwrap();
//! for record in &table.records {
//!     println!("{:<28} {:.4}", record.result.system_name, record.metrics.distance_to_median);
//! }
//! ```

pub mod ballots;
pub mod candidates;
pub mod cli;
pub mod electorate;
pub mod error;
pub mod fractional;
pub mod metrics;
pub mod report;
pub mod scenario;
pub mod spatial;
pub mod systems;

pub use ballots::{build_preference_matrix, derive_ballots, BallotConfig, BallotProfile, PreferenceMatrix};
pub use candidates::{nearest_candidate, Candidate, CandidateSet};
pub use electorate::{sample_electorate, Electorate, MixtureComponent};
pub use error::{Error, Result};
pub use metrics::{
    evaluate, gini, median_legislator, run_monte_carlo, run_simulation, ElectionMetrics, MonteCarloSettings,
    MonteCarloSummary, SimulationSettings, SimulationTable,
};
pub use scenario::{builtin_scenario, builtin_scenarios, load_all_scenarios, load_scenario, Scenario};
pub use spatial::{euclidean_distance, geometric_median, Point2};
pub use systems::{system_registry, ElectionInput, ElectionResult, ElectoralSystem, SystemRegistry};
