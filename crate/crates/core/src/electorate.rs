//! Voter populations drawn from axis-aligned Gaussian mixtures.
//!
//! # Random stream
//!
//! Sampling uses `ChaCha20Rng` seeded through `SeedableRng::seed_from_u64`,
//! which is specified independently of platform and word size. For every
//! voter the stream is consumed in this fixed order:
//!
//! 1. one uniform `f64` in `[0, 1)` selects the component by walking the
//!    cumulative weights;
//! 2. one standard normal (rand_distr ziggurat) for axis 1;
//! 3. one standard normal for axis 2.
//!
//! If the resulting point leaves the unit square, steps 2 and 3 are repeated
//! for the same component, up to [`MAX_REJECTIONS`] times, after which the
//! last draw is clamped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spatial::Point2;

pub const MAX_REJECTIONS: usize = 1_000;

/// Tolerance on the sum of mixture weights.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: Point2,
    /// Per-axis standard deviation.
    pub std: [f64; 2],
}

impl MixtureComponent {
    pub fn new(weight: f64, mean: Point2, std: [f64; 2]) -> Self {
        Self { weight, mean, std }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Electorate {
    pub voters: Vec<Point2>,
    pub seed: u64,
}

impl Electorate {
    pub fn len(&self) -> usize {
        self.voters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }
}

/// Checks weights, standard deviations and means of a mixture.
pub fn validate_mixture(components: &[MixtureComponent]) -> Result<()> {
    if components.is_empty() {
        return Err(Error::InvalidMixture("no components".into()));
    }
    for (i, c) in components.iter().enumerate() {
        if !(c.weight > 0.0) || !c.weight.is_finite() {
            return Err(Error::InvalidMixture(format!(
                "component {i}: weight must be positive, got {}",
                c.weight
            )));
        }
        if c.std.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidMixture(format!(
                "component {i}: std must be positive, got [{}, {}]",
                c.std[0], c.std[1]
            )));
        }
        if !c.mean.is_finite() || !c.mean.in_unit_square() {
            return Err(Error::InvalidMixture(format!(
                "component {i}: mean {} lies outside [0,1]^2",
                c.mean
            )));
        }
    }
    let total: f64 = components.iter().map(|c| c.weight).sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::InvalidMixture(format!("weights sum to {total}")));
    }
    Ok(())
}

/// Draws `n` voters from the mixture. Equal arguments give bit-identical
/// output on every platform.
pub fn sample_electorate(components: &[MixtureComponent], n: usize, seed: u64) -> Result<Electorate> {
    validate_mixture(components)?;
    if n == 0 {
        return Err(Error::InvalidMixture("n must be at least 1".into()));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let cumulative: Vec<f64> = components
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c.weight;
            Some(*acc)
        })
        .collect();

    let voters = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let k = cumulative
                .iter()
                .position(|&c| u < c)
                .unwrap_or(components.len() - 1);
            draw_in_unit_square(&mut rng, &components[k])
        })
        .collect();

    Ok(Electorate { voters, seed })
}

fn draw_in_unit_square<R: Rng>(rng: &mut R, c: &MixtureComponent) -> Point2 {
    let mut p = draw(rng, c);
    for _ in 0..MAX_REJECTIONS {
        if p.in_unit_square() {
            return p;
        }
        p = draw(rng, c);
    }
    if p.in_unit_square() {
        p
    } else {
        Point2::new(p.x1.clamp(0.0, 1.0), p.x2.clamp(0.0, 1.0))
    }
}

fn draw<R: Rng>(rng: &mut R, c: &MixtureComponent) -> Point2 {
    let z1: f64 = rng.sample(StandardNormal);
    let z2: f64 = rng.sample(StandardNormal);
    Point2::new(c.mean.x1 + c.std[0] * z1, c.mean.x2 + c.std[1] * z2)
}
