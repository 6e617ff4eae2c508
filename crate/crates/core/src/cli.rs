//! Command-line configuration and orchestration.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use log::info;
use serde::Serialize;

use crate::ballots::BallotConfig;
use crate::error::Error;
use crate::metrics::{run_monte_carlo, run_simulation, MonteCarloSettings, MonteCarloSummary, SimulationSettings, SimulationTable};
use crate::report;
use crate::scenario::{builtin_scenarios, load_all_scenarios, slugify, Scenario};
use crate::systems::{SystemRegistry, DEFAULT_SIGMA_GRID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Single,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Compare electoral systems on spatial voter scenarios.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "electoral-sim", version, about)]
pub struct RunConfig {
    /// Scenario to run, by slug or name (repeatable or comma-separated; default: all)
    #[arg(long = "scenario", value_delimiter = ',')]
    pub scenarios: Vec<String>,

    /// Load scenarios from this directory instead of the built-in set
    #[arg(long)]
    pub scenario_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "single")]
    pub mode: Mode,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Monte Carlo trials per scenario
    #[arg(long, default_value_t = 200)]
    pub trials: usize,

    /// Voters per Monte Carlo trial
    #[arg(long, default_value_t = 2000)]
    pub mc_voters: usize,

    /// Approval threshold τ: approve candidates within τ times the nearest distance
    #[arg(long, default_value_t = 1.5)]
    pub approval_tau: f64,

    /// Fractional Ballot temperatures
    #[arg(long = "sigma", value_delimiter = ',', default_values_t = DEFAULT_SIGMA_GRID)]
    pub sigma_grid: Vec<f64>,

    /// Legislature size for the proportional systems
    #[arg(long, default_value_t = 100)]
    pub seats: usize,

    /// Only run these systems (repeatable or comma-separated; default: all)
    #[arg(long = "system", value_delimiter = ',')]
    pub systems: Vec<String>,

    #[arg(long, default_value = "results")]
    pub output_dir: PathBuf,

    #[arg(long = "format", value_enum, value_delimiter = ',', default_values_t = [Format::Csv, Format::Json, Format::Svg])]
    pub formats: Vec<Format>,

    /// Also write the sampled voter positions of each scenario (single mode)
    #[arg(long)]
    pub export_voters: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::parse_from(["electoral-sim"])
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown scenario `{name}` (available: {available})")]
    UnknownScenario { name: String, available: String },
    #[error("output directory `{path}` is not writable: {source}")]
    OutputDir { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Run(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::UnknownScenario { .. } => 3,
            CliError::OutputDir { .. } => 4,
            CliError::Run(_) => 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.formats.is_empty() {
            return Err(CliError::Config("at least one output format is required".into()));
        }
        if self.trials == 0 || self.mc_voters == 0 {
            return Err(CliError::Config("--trials and --mc-voters must be positive".into()));
        }
        if self.sigma_grid.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(CliError::Config("every --sigma value must be positive".into()));
        }
        if self.seats == 0 {
            return Err(CliError::Config("--seats must be positive".into()));
        }
        BallotConfig::new(self.approval_tau).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    /// One-line description printed at the start of every run.
    pub fn describe(&self) -> String {
        let sigmas: Vec<String> = self.sigma_grid.iter().map(|s| s.to_string()).collect();
        let formats: Vec<&str> = self
            .formats
            .iter()
            .map(|f| match f {
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Svg => "svg",
            })
            .collect();
        let mode = match self.mode {
            Mode::Single => "single".to_string(),
            Mode::MonteCarlo => format!("monte-carlo trials={} mc_voters={}", self.trials, self.mc_voters),
        };
        format!(
            "mode={mode} seed={} approval_tau={} sigma=[{}] seats={} formats={} output_dir={}",
            self.seed,
            self.approval_tau,
            sigmas.join(","),
            self.seats,
            formats.join(","),
            self.output_dir.display()
        )
    }

    pub fn registry(&self) -> Result<SystemRegistry, CliError> {
        let mut registry = SystemRegistry::standard(&self.sigma_grid, self.seats)?;
        if !self.systems.is_empty() {
            registry.retain_named(&self.systems)?;
        }
        Ok(registry)
    }

    /// Scenarios selected by `--scenario`, in the order of the source set.
    pub fn select_scenarios(&self) -> Result<Vec<Scenario>, CliError> {
        let available = match &self.scenario_dir {
            Some(dir) => {
                let batch = load_all_scenarios(dir)?;
                for (path, e) in &batch.errors {
                    eprintln!("warning: skipped {}: {e}", path.display());
                }
                batch.scenarios
            }
            None => builtin_scenarios(),
        };
        if self.scenarios.is_empty() {
            return Ok(available);
        }
        let mut chosen = Vec::new();
        for wanted in &self.scenarios {
            let slug = slugify(wanted);
            match available.iter().find(|s| s.slug() == slug) {
                Some(s) if !chosen.contains(s) => chosen.push(s.clone()),
                Some(_) => {}
                None => {
                    return Err(CliError::UnknownScenario {
                        name: wanted.clone(),
                        available: available.iter().map(|s| s.slug()).collect::<Vec<_>>().join(", "),
                    })
                }
            }
        }
        Ok(chosen)
    }
}

fn prepare_output_dir(dir: &Path) -> Result<(), CliError> {
    let fail = |source| CliError::OutputDir { path: dir.to_path_buf(), source };
    fs::create_dir_all(dir).map_err(fail)?;
    let probe = dir.join(".electoral-sim-write-check");
    fs::write(&probe, b"").map_err(fail)?;
    fs::remove_file(&probe).map_err(fail)?;
    Ok(())
}

/// What a run produced.
#[derive(Debug)]
pub enum RunOutput {
    Single(Vec<SimulationTable>),
    MonteCarlo(Vec<MonteCarloSummary>),
}

#[derive(Debug)]
pub struct RunReport {
    pub output: RunOutput,
    pub written: Vec<PathBuf>,
}

pub fn execute(config: &RunConfig) -> Result<RunReport, CliError> {
    config.validate()?;
    let registry = config.registry()?;
    let scenarios = config.select_scenarios()?;
    prepare_output_dir(&config.output_dir)?;
    let ballots = BallotConfig::new(config.approval_tau)?;
    let out = |name: &str| config.output_dir.join(name);
    let mut written = Vec::new();

    let output = match config.mode {
        Mode::Single => {
            let settings = SimulationSettings { seed: config.seed, ballots, ..SimulationSettings::default() };
            let mut tables = Vec::with_capacity(scenarios.len());
            for scenario in &scenarios {
                info!("simulating {}", scenario.name);
                tables.push(run_simulation(scenario, &registry, &settings)?);
            }
            if config.wants(Format::Csv) {
                report::emit_results_csv(&tables, &out("results.csv"))?;
                written.push(out("results.csv"));
            }
            if config.wants(Format::Json) {
                report::emit_results_json(config, &tables, &out("results.json"))?;
                written.push(out("results.json"));
            }
            if config.wants(Format::Svg) {
                report::emit_heatmap_svg(&report::HeatmapMatrix::from_tables(&tables), &out("heatmap.svg"))?;
                written.push(out("heatmap.svg"));
            }
            if config.export_voters {
                for t in &tables {
                    let path = out(&format!("voters_{}.csv", slugify(&t.scenario)));
                    report::emit_voters_csv(t, &path)?;
                    written.push(path);
                }
            }
            RunOutput::Single(tables)
        }
        Mode::MonteCarlo => {
            let settings = MonteCarloSettings {
                trials: config.trials,
                voters_per_trial: config.mc_voters,
                base_seed: config.seed,
                ballots,
                ..MonteCarloSettings::default()
            };
            let mut summaries = Vec::with_capacity(scenarios.len());
            for scenario in &scenarios {
                info!("monte carlo: {} ({} trials)", scenario.name, config.trials);
                summaries.push(run_monte_carlo(scenario, &registry, &settings)?);
            }
            if config.wants(Format::Csv) {
                report::emit_monte_carlo_csv(&summaries, &out("mc_trials.csv"), &out("mc_summary.csv"))?;
                written.push(out("mc_trials.csv"));
                written.push(out("mc_summary.csv"));
            }
            if config.wants(Format::Json) {
                report::emit_monte_carlo_json(config, &summaries, &out("mc_summary.json"))?;
                written.push(out("mc_summary.json"));
            }
            if config.wants(Format::Svg) {
                report::emit_heatmap_svg(&report::HeatmapMatrix::from_monte_carlo(&summaries), &out("mc_heatmap.svg"))?;
                written.push(out("mc_heatmap.svg"));
            }
            RunOutput::MonteCarlo(summaries)
        }
    };
    Ok(RunReport { output, written })
}

/// Plain-text table of δ per system and scenario.
pub fn summary_table(output: &RunOutput) -> String {
    let (columns, rows): (Vec<String>, Vec<(String, Vec<f64>)>) = match output {
        RunOutput::Single(tables) => {
            let m = report::HeatmapMatrix::from_tables(tables);
            (m.column_labels, m.row_labels.into_iter().zip(m.values).collect())
        }
        RunOutput::MonteCarlo(summaries) => {
            let m = report::HeatmapMatrix::from_monte_carlo(summaries);
            (m.column_labels, m.row_labels.into_iter().zip(m.values).collect())
        }
    };
    let mut s = format!("{:<30}", "system");
    for c in &columns {
        s.push_str(&format!(" {:>12}", abbreviate(c)));
    }
    s.push('\n');
    for (label, values) in rows {
        s.push_str(&format!("{label:<30}"));
        for v in values {
            s.push_str(&format!(" {v:>12.4}"));
        }
        s.push('\n');
    }
    s
}

fn abbreviate(name: &str) -> String {
    name.chars().take(12).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.seed, 42);
        assert_eq!(c.trials, 200);
        assert_eq!(c.mc_voters, 2000);
        assert_eq!(c.approval_tau, 1.5);
        assert_eq!(c.sigma_grid, vec![0.1, 0.3, 1.0]);
        assert_eq!(c.mode, Mode::Single);
        assert_eq!(c.formats, vec![Format::Csv, Format::Json, Format::Svg]);
        assert!(c.scenarios.is_empty());
    }

    #[test]
    fn parses_lists() {
        let c = RunConfig::try_parse_from([
            "electoral-sim", "--scenario", "polarized_bimodal,dominant_party", "--sigma", "0.2",
            "--format", "csv", "--mode", "monte-carlo",
        ])
        .unwrap();
        assert_eq!(c.scenarios.len(), 2);
        assert_eq!(c.sigma_grid, vec![0.2]);
        assert_eq!(c.formats, vec![Format::Csv]);
        assert_eq!(c.mode, Mode::MonteCarlo);
        assert!(c.describe().contains("sigma=[0.2]"));
    }

    #[test]
    fn rejects_bad_values() {
        let c = RunConfig { sigma_grid: vec![0.0], ..RunConfig::default() };
        assert!(matches!(c.validate(), Err(CliError::Config(_))));
        let c = RunConfig { approval_tau: 0.5, ..RunConfig::default() };
        assert!(c.validate().is_err());
        assert!(RunConfig::try_parse_from(["electoral-sim", "--format", ""]).is_err());
    }

    #[test]
    fn unknown_scenario_names_itself() {
        let c = RunConfig { scenarios: vec!["nonexistent".into()], ..RunConfig::default() };
        let e = c.select_scenarios().unwrap_err();
        assert!(e.to_string().contains("nonexistent"));
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn system_filter() {
        let c = RunConfig { systems: vec!["irv".into(), "Plurality".into()], ..RunConfig::default() };
        assert_eq!(c.registry().unwrap().len(), 2);
        let c = RunConfig { systems: vec!["Coin Toss".into()], ..RunConfig::default() };
        assert!(c.registry().is_err());
    }
}
