//! Geometry of the two-dimensional ideological space.
//!
//! Axis 1 is the economic left/right axis, axis 2 the social
//! libertarian/authoritarian axis. Voters and candidates live in the unit
//! square; computed centroids and medians are left unclamped.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A position in the ideological plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// True when both coordinates lie in `[0, 1]`.
    pub fn in_unit_square(&self) -> bool {
        (0.0..=1.0).contains(&self.x1) && (0.0..=1.0).contains(&self.x2)
    }

    pub fn norm(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        euclidean_distance(*self, *other)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x1, x2]: [f64; 2]) -> Self {
        Self { x1, x2 }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x1, p.x2]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x1 * rhs, self.x2 * rhs)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.x1, self.x2)
    }
}

/// L2 distance between two points.
pub fn euclidean_distance(a: Point2, b: Point2) -> f64 {
    (a.x1 - b.x1).hypot(a.x2 - b.x2)
}

/// Coordinate-wise average. Returns `None` for an empty slice.
pub fn arithmetic_mean(points: &[Point2]) -> Option<Point2> {
    if points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    let (s1, s2) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.x1, b + p.x2));
    Some(Point2::new(s1 / n, s2 / n))
}

/// Sum of distances from `p` to every point: the quantity the geometric
/// median minimises.
pub fn median_objective(points: &[Point2], p: Point2) -> f64 {
    points.iter().map(|v| euclidean_distance(*v, p)).sum()
}

/// Stopping rule for the Weiszfeld iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiszfeldOptions {
    /// Convergence threshold on the displacement between successive iterates.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for WeiszfeldOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 10_000,
        }
    }
}

/// Final state of a Weiszfeld run, converged or not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiszfeldRun {
    pub point: Point2,
    pub iterations: usize,
    pub converged: bool,
}

/// An iterate closer than this to a data point is treated as sitting on it.
const COINCIDENCE_EPS: f64 = 1e-12;

/// When the iterate comes within this fraction of the mean distance to the
/// points of a data point, that point is tested for optimality directly. Plain
/// Weiszfeld steps approach a median that sits on a data point only
/// linearly, sometimes with a rate close to 1.
const VERTEX_CHECK_RATIO: f64 = 1e-2;

/// Kuhn's condition: `v` is the median when the resultant of unit vectors
/// towards the other points is no longer than the multiplicity of `v`.
fn is_median_vertex(points: &[Point2], v: Point2) -> bool {
    let mut pull = Point2::default();
    let mut multiplicity = 0usize;
    for p in points {
        let d = euclidean_distance(*p, v);
        if d < COINCIDENCE_EPS {
            multiplicity += 1;
        } else {
            pull = pull + (*p - v) * (1.0 / d);
        }
    }
    pull.norm() <= multiplicity as f64
}

/// Runs the Weiszfeld iteration from the arithmetic mean, using the
/// Vardi–Zhang modification when an iterate lands on a data point.
///
/// Unlike [`geometric_median`] this never fails on non-convergence; the
/// caller inspects `converged`.
pub fn weiszfeld(points: &[Point2], options: WeiszfeldOptions) -> Result<WeiszfeldRun> {
    if !(options.tolerance > 0.0) {
        return Err(Error::InvalidTolerance(options.tolerance));
    }
    let mut y = arithmetic_mean(points).ok_or(Error::EmptyPointSet)?;
    if points.len() == 1 {
        return Ok(WeiszfeldRun {
            point: points[0],
            iterations: 0,
            converged: true,
        });
    }

    #[cfg(debug_assertions)]
    let mut previous_objective = median_objective(points, y);

    for iteration in 1..=options.max_iterations {
        let mut weight_sum = 0.0;
        let mut weighted = Point2::default();
        // Unit-vector sum from y towards every non-coincident point.
        let mut pull = Point2::default();
        let mut coincident = 0usize;
        let mut nearest = (f64::INFINITY, y);
        let mut distance_sum = 0.0;
        for v in points {
            let d = euclidean_distance(*v, y);
            distance_sum += d;
            if d < nearest.0 {
                nearest = (d, *v);
            }
            if d < COINCIDENCE_EPS {
                coincident += 1;
                continue;
            }
            let w = 1.0 / d;
            weight_sum += w;
            weighted = weighted + *v * w;
            pull = pull + (*v - y) * w;
        }

        if weight_sum == 0.0 {
            // Every point coincides with y.
            return Ok(WeiszfeldRun {
                point: y,
                iterations: iteration,
                converged: true,
            });
        }

        if coincident == 0
            && nearest.0 < VERTEX_CHECK_RATIO * distance_sum / points.len() as f64
            && is_median_vertex(points, nearest.1)
        {
            return Ok(WeiszfeldRun {
                point: nearest.1,
                iterations: iteration,
                converged: true,
            });
        }

        let plain_step = weighted * (1.0 / weight_sum);
        let next = if coincident == 0 {
            plain_step
        } else {
            let eta = coincident as f64;
            let r = pull.norm();
            if r <= eta {
                // y is the median: the pull of the other points cannot
                // overcome the mass sitting at y.
                return Ok(WeiszfeldRun {
                    point: y,
                    iterations: iteration,
                    converged: true,
                });
            }
            let ratio = eta / r;
            plain_step * (1.0 - ratio) + y * ratio
        };

        #[cfg(debug_assertions)]
        {
            let objective = median_objective(points, next);
            debug_assert!(
                objective <= previous_objective * (1.0 + 1e-12) + 1e-12,
                "Weiszfeld objective increased: {previous_objective} -> {objective}"
            );
            previous_objective = objective;
        }

        let step = euclidean_distance(next, y);
        y = next;
        if step < options.tolerance {
            return Ok(WeiszfeldRun {
                point: y,
                iterations: iteration,
                converged: true,
            });
        }
    }

    Ok(WeiszfeldRun {
        point: y,
        iterations: options.max_iterations,
        converged: false,
    })
}

/// Point minimising the summed Euclidean distance to `points`.
///
/// Fails with [`Error::NotConverged`] (carrying the last iterate) when the
/// displacement never drops below the tolerance.
pub fn geometric_median(points: &[Point2], options: WeiszfeldOptions) -> Result<Point2> {
    let run = weiszfeld(points, options)?;
    if run.converged {
        Ok(run.point)
    } else {
        Err(Error::NotConverged {
            last: run.point,
            iterations: run.iterations,
        })
    }
}

/// Median, mean, and the distance between them for a point cloud.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionDiagnostics {
    pub geometric_median: Point2,
    pub arithmetic_mean: Point2,
    pub median_mean_gap: f64,
}

pub fn diagnostics(points: &[Point2]) -> Result<DistributionDiagnostics> {
    diagnostics_with(points, WeiszfeldOptions::default())
}

pub fn diagnostics_with(
    points: &[Point2],
    options: WeiszfeldOptions,
) -> Result<DistributionDiagnostics> {
    let arithmetic_mean = arithmetic_mean(points).ok_or(Error::EmptyPointSet)?;
    let geometric_median = geometric_median(points, options)?;
    Ok(DistributionDiagnostics {
        geometric_median,
        arithmetic_mean,
        median_mean_gap: euclidean_distance(geometric_median, arithmetic_mean),
    })
}
