//! CSV, JSON and SVG output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{MonteCarloSummary, SimulationTable};

pub const RESULTS_HEADER: [&str; 10] = [
    "scenario",
    "system",
    "delta",
    "majority_satisfaction",
    "mean_distance",
    "worst_distance",
    "gini",
    "centroid_delta",
    "median_legislator_delta",
    "artefact_gap",
];

/// Six-decimal rendering shared by every export.
pub fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn round6(x: f64) -> f64 {
    fmt6(x).parse().expect("formatted float parses")
}

fn opt6(x: Option<f64>) -> String {
    x.map(fmt6).unwrap_or_default()
}

/// One metrics row as written to CSV and JSON (values rounded to 6 decimals).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub scenario: String,
    pub system: String,
    /// Outcome position; JSON only.
    pub outcome: [f64; 2],
    pub delta: f64,
    pub majority_satisfaction: f64,
    pub mean_distance: f64,
    pub worst_distance: f64,
    pub gini: f64,
    pub centroid_delta: Option<f64>,
    pub median_legislator_delta: Option<f64>,
    pub artefact_gap: Option<f64>,
}

pub fn result_rows(table: &SimulationTable) -> Vec<ResultRow> {
    table
        .records
        .iter()
        .map(|r| {
            let m = &r.metrics;
            ResultRow {
                scenario: table.scenario.clone(),
                system: r.result.system_name.clone(),
                outcome: [round6(r.result.outcome_position.x1), round6(r.result.outcome_position.x2)],
                delta: round6(m.distance_to_median),
                majority_satisfaction: round6(m.majority_satisfaction),
                mean_distance: round6(m.mean_voter_distance),
                worst_distance: round6(m.worst_voter_distance),
                gini: round6(m.distance_gini),
                centroid_delta: m.centroid_delta.map(round6),
                median_legislator_delta: m.median_legislator_delta.map(round6),
                artefact_gap: m.artefact_gap.map(round6),
            }
        })
        .collect()
}

fn write_file(destination: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(destination, bytes).map_err(|e| Error::io(destination, e))
}

/// Renders the per-system metrics table; rows follow registry order.
pub fn results_csv(tables: &[SimulationTable]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESULTS_HEADER)?;
    for table in tables {
        for r in result_rows(table) {
            w.write_record([
                r.scenario,
                r.system,
                fmt6(r.delta),
                fmt6(r.majority_satisfaction),
                fmt6(r.mean_distance),
                fmt6(r.worst_distance),
                fmt6(r.gini),
                opt6(r.centroid_delta),
                opt6(r.median_legislator_delta),
                opt6(r.artefact_gap),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit_results_csv(tables: &[SimulationTable], destination: &Path) -> Result<()> {
    write_file(destination, results_csv(tables)?.as_bytes())
}

#[derive(Serialize)]
struct JsonScenario<'a> {
    scenario: &'a str,
    seed: u64,
    n_voters: usize,
    approval_threshold: f64,
    geometric_median: [f64; 2],
    arithmetic_mean: [f64; 2],
    median_mean_gap: f64,
    rows: Vec<ResultRow>,
}

pub fn results_json<C: Serialize>(config: &C, tables: &[SimulationTable]) -> Result<String> {
    let scenarios: Vec<JsonScenario> = tables
        .iter()
        .map(|t| JsonScenario {
            scenario: &t.scenario,
            seed: t.seed,
            n_voters: t.n_voters,
            approval_threshold: t.approval_threshold,
            geometric_median: t.diagnostics.geometric_median.into(),
            arithmetic_mean: t.diagnostics.arithmetic_mean.into(),
            median_mean_gap: round6(t.diagnostics.median_mean_gap),
            rows: result_rows(t),
        })
        .collect();
    let doc = serde_json::json!({ "config": config, "scenarios": scenarios });
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn emit_results_json<C: Serialize>(config: &C, tables: &[SimulationTable], destination: &Path) -> Result<()> {
    write_file(destination, results_json(config, tables)?.as_bytes())
}

/// Long-format per-trial δ: `scenario,system,trial,seed,delta`.
pub fn monte_carlo_trials_csv(summaries: &[MonteCarloSummary]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scenario", "system", "trial", "seed", "delta"])?;
    for s in summaries {
        for dist in &s.systems {
            for (t, d) in dist.deltas.iter().enumerate() {
                w.write_record([
                    s.scenario.clone(),
                    dist.system.clone(),
                    t.to_string(),
                    s.trial_seeds[t].to_string(),
                    fmt6(*d),
                ])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn monte_carlo_summary_csv(summaries: &[MonteCarloSummary]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "scenario", "system", "trials", "median", "q1", "q3", "p5", "p95", "mean", "variance",
    ])?;
    for s in summaries {
        for d in &s.systems {
            w.write_record([
                s.scenario.clone(),
                d.system.clone(),
                s.trials.to_string(),
                fmt6(d.median),
                fmt6(d.q1),
                fmt6(d.q3),
                fmt6(d.p5),
                fmt6(d.p95),
                fmt6(d.mean),
                format!("{:.9}", d.variance),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit_monte_carlo_csv(summaries: &[MonteCarloSummary], trials: &Path, summary: &Path) -> Result<()> {
    write_file(trials, monte_carlo_trials_csv(summaries)?.as_bytes())?;
    write_file(summary, monte_carlo_summary_csv(summaries)?.as_bytes())
}

pub fn emit_monte_carlo_json<C: Serialize>(config: &C, summaries: &[MonteCarloSummary], destination: &Path) -> Result<()> {
    let doc = serde_json::json!({ "config": config, "monte_carlo": summaries });
    write_file(destination, serde_json::to_string_pretty(&doc)?.as_bytes())
}

/// Raw voter positions for external plotting.
pub fn emit_voters_csv(table: &SimulationTable, destination: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x1", "x2"])?;
    for v in &table.electorate.voters {
        w.write_record([format!("{:.9}", v.x1), format!("{:.9}", v.x2)])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    write_file(destination, &bytes)
}

/// δ values laid out as systems (rows) by scenarios (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapMatrix {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    /// `values[row][column]`.
    pub values: Vec<Vec<f64>>,
}

impl HeatmapMatrix {
    /// Assumes every table ran the same registry.
    pub fn from_tables(tables: &[SimulationTable]) -> Self {
        let row_labels: Vec<String> = tables
            .first()
            .map(|t| t.records.iter().map(|r| r.result.system_name.clone()).collect())
            .unwrap_or_default();
        let column_labels = tables.iter().map(|t| t.scenario.clone()).collect();
        let values = (0..row_labels.len())
            .map(|r| tables.iter().map(|t| t.records[r].metrics.distance_to_median).collect())
            .collect();
        Self { row_labels, column_labels, values }
    }

    pub fn from_monte_carlo(summaries: &[MonteCarloSummary]) -> Self {
        let row_labels: Vec<String> = summaries
            .first()
            .map(|s| s.systems.iter().map(|d| d.system.clone()).collect())
            .unwrap_or_default();
        let column_labels = summaries.iter().map(|s| s.scenario.clone()).collect();
        let values = (0..row_labels.len())
            .map(|r| summaries.iter().map(|s| s.systems[r].median).collect())
            .collect();
        Self { row_labels, column_labels, values }
    }

    /// Row index of each column's minimum; the first row wins ties.
    pub fn column_minima(&self) -> Vec<usize> {
        (0..self.column_labels.len())
            .map(|c| {
                crate::candidates::argmin_by_key(self.values.iter().map(|row| row[c]))
            })
            .collect()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

/// Green (low) through yellow to red (high).
fn ramp(t: f64) -> (u8, u8, u8) {
    const LOW: (f64, f64, f64) = (26.0, 152.0, 80.0);
    const MID: (f64, f64, f64) = (255.0, 255.0, 191.0);
    const HIGH: (f64, f64, f64) = (215.0, 48.0, 39.0);
    let t = t.clamp(0.0, 1.0);
    let (a, b, u) = if t < 0.5 { (LOW, MID, t * 2.0) } else { (MID, HIGH, (t - 0.5) * 2.0) };
    let mix = |x: f64, y: f64| (x + (y - x) * u).round() as u8;
    (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

const CELL_W: usize = 120;
const CELL_H: usize = 28;
const LEFT: usize = 220;
const TOP: usize = 60;

pub fn heatmap_svg(matrix: &HeatmapMatrix) -> String {
    let rows = matrix.row_labels.len();
    let cols = matrix.column_labels.len();
    let width = LEFT + cols * CELL_W + 20;
    let height = TOP + rows * CELL_H + 20;
    let (lo, hi) = matrix
        .values
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let span = hi - lo;
    let minima = matrix.column_minima();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    for (c, label) in matrix.column_labels.iter().enumerate() {
        let x = LEFT + c * CELL_W + CELL_W / 2;
        let _ = writeln!(
            svg,
            r#"<text class="col-label" x="{x}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            TOP - 10,
            xml_escape(label)
        );
    }
    for (r, label) in matrix.row_labels.iter().enumerate() {
        let y = TOP + r * CELL_H;
        let _ = writeln!(
            svg,
            r#"<text class="row-label" x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
            LEFT - 8,
            y + CELL_H / 2 + 4,
            xml_escape(label)
        );
        for c in 0..cols {
            let v = matrix.values[r][c];
            let t = if span > 0.0 { (v - lo) / span } else { 0.0 };
            let (red, green, blue) = ramp(t);
            let x = LEFT + c * CELL_W;
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" fill="rgb({red},{green},{blue})" stroke="white" stroke-width="1"/>"#
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{:.4}</text>"#,
                x + CELL_W / 2,
                y + CELL_H / 2 + 4,
                v
            );
        }
    }
    // borders last so neighbouring cells do not paint over them
    for (c, &r) in minima.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<rect class="best" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="3"/>"#,
            LEFT + c * CELL_W + 1,
            TOP + r * CELL_H + 1,
            CELL_W - 2,
            CELL_H - 2
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_heatmap_svg(matrix: &HeatmapMatrix, destination: &Path) -> Result<()> {
    write_file(destination, heatmap_svg(matrix).as_bytes())
}
