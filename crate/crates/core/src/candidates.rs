use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spatial::{euclidean_distance, Point2};

/// One entry of a candidate roster as it appears in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub label: String,
    pub position: Point2,
}

/// Immutable, validated roster. Candidates are addressed by index.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    labels: Vec<String>,
    positions: Vec<Point2>,
}

impl CandidateSet {
    pub fn new(candidates: Vec<Candidate>) -> Result<Self> {
        let (labels, positions) = candidates
            .into_iter()
            .map(|c| (c.label, c.position))
            .unzip();
        Self::from_parts(labels, positions)
    }

    pub fn from_parts(labels: Vec<String>, positions: Vec<Point2>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidCandidates("at least one candidate is required".into()));
        }
        if labels.len() != positions.len() {
            return Err(Error::InvalidCandidates(format!(
                "{} labels but {} positions",
                labels.len(),
                positions.len()
            )));
        }
        let mut seen = HashSet::new();
        for (label, p) in labels.iter().zip(&positions) {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidCandidates(format!("duplicate label `{label}`")));
            }
            if !p.is_finite() || !p.in_unit_square() {
                return Err(Error::InvalidCandidates(format!(
                    "candidate `{label}` position {p} lies outside [0,1]^2"
                )));
            }
        }
        Ok(Self { labels, positions })
    }

    /// Roster with generated labels `C0, C1, ...`; handy in tests.
    pub fn from_positions(positions: Vec<Point2>) -> Result<Self> {
        let labels = (0..positions.len()).map(|i| format!("C{i}")).collect();
        Self::from_parts(labels, positions)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn position(&self, k: usize) -> Point2 {
        self.positions[k]
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn to_candidates(&self) -> Vec<Candidate> {
        self.labels
            .iter()
            .zip(&self.positions)
            .map(|(label, position)| Candidate {
                label: label.clone(),
                position: *position,
            })
            .collect()
    }

    /// Index of the candidate closest to `p`; lowest index on ties.
    pub fn nearest(&self, p: Point2) -> usize {
        nearest_point(&self.positions, p)
    }

    /// Equal-weight mean of the candidate positions.
    pub fn mean_position(&self) -> Point2 {
        crate::spatial::arithmetic_mean(&self.positions).expect("candidate set is non-empty")
    }
}

pub fn nearest_candidate(voter: Point2, candidates: &CandidateSet) -> usize {
    candidates.nearest(voter)
}

pub(crate) fn nearest_point(points: &[Point2], p: Point2) -> usize {
    argmin_by_key(points.iter().map(|q| euclidean_distance(p, *q)))
}

/// Index of the smallest value; the first one wins ties.
pub(crate) fn argmin_by_key(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Index of the largest value; the first one wins ties.
pub(crate) fn argmax_by_key(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}
