//! Orbit-space point clouds and the empirical coverage comparison between
//! the round and equator quotients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraTag;
use crate::bundle::{Chart, ChartPoint, EquatorPoint};
use crate::error::{Error, Result};
use crate::orbit::{q_k, q_s, region_contains, OrbitPoint};
use crate::sampling::stream_rng;
use crate::symmetry::{random_sphere_point, SpherePoint};

/// Which quotient map generates the cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudSource {
    /// Q_s of uniform points on the round sphere.
    Round,
    /// Q_k of equator-sphere points of the bundle with the given odd k.
    Exotic(i32),
}

impl fmt::Display for CloudSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CloudSource::Round => f.write_str("round"),
            CloudSource::Exotic(k) => write!(f, "exotic:{k}"),
        }
    }
}

impl FromStr for CloudSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<CloudSource> {
        if s == "round" {
            return Ok(CloudSource::Round);
        }
        if let Some(k_str) = s.strip_prefix("exotic:") {
            let k: i32 = k_str
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("invalid k in cloud source '{s}'")))?;
            return Ok(CloudSource::Exotic(k));
        }
        Err(Error::InvalidConfig(format!(
            "unknown cloud source '{s}' (expected 'round' or 'exotic:<k>')"
        )))
    }
}

/// Splits a uniform round-sphere point (a, c) into an equator-sphere chart
/// point through the comparison embeddings: the chart with the better-
/// conditioned inverse is chosen, and the resulting point satisfies the
/// equator condition exactly (up to rounding) with h(point) = (a, c).
pub(crate) fn equator_point_under(p: &SpherePoint) -> EquatorPoint {
    let a = p.a();
    let c = p.c();
    let point = if c.norm() >= a.norm() {
        // Invert h₁: q = c/|c|, u = (a q̄)/|c|.
        let q = *c * (1.0 / c.norm());
        let u = (*a * q.conjugate()) * (1.0 / c.norm());
        ChartPoint::new(Chart::One, u, q)
    } else {
        // Invert h₂: r = a/|a|, v = (r c̄)/|a|.
        let r = *a * (1.0 / a.norm());
        let v = (r * c.conjugate()) * (1.0 / a.norm());
        ChartPoint::new(Chart::Two, v, r)
    };
    EquatorPoint::new(point.expect("embedding inverse lands on the unit sphere factor"))
        .expect("embedding inverse satisfies the equator condition")
}

/// Samples `n` orbit-space points from the chosen quotient.
///
/// The exotic cloud draws uniform round-sphere points and pushes them onto
/// the equator sphere through the inverse comparison embeddings before
/// applying Q_k, so both sources sweep their entire domain; every output is
/// asserted to lie in the orbit-space region.
pub fn sample_orbit_space(
    tag: AlgebraTag,
    source: CloudSource,
    n: u64,
    seed: u64,
) -> Result<Vec<OrbitPoint>> {
    if let CloudSource::Exotic(k) = source {
        if k.rem_euclid(2) == 0 {
            return Err(Error::EvenK(k));
        }
    }
    Ok(sample_cloud_with(tag, source, n, &mut stream_rng(seed, 0)))
}

/// Cloud sampling against a caller-provided generator; used by the suites
/// so each check keeps its own stream.
pub(crate) fn sample_cloud_with(
    tag: AlgebraTag,
    source: CloudSource,
    n: u64,
    rng: &mut ChaCha8Rng,
) -> Vec<OrbitPoint> {
    (0..n)
        .map(|_| {
            let pt = sample_one(tag, source, rng);
            assert!(
                region_contains(&pt, 1e-10),
                "quotient output escaped the region: ({}, {}, {})",
                pt.x,
                pt.y,
                pt.z
            );
            pt
        })
        .collect()
}

fn sample_one(tag: AlgebraTag, source: CloudSource, rng: &mut ChaCha8Rng) -> OrbitPoint {
    let p = random_sphere_point(tag, rng);
    match source {
        CloudSource::Round => q_s(&p),
        CloudSource::Exotic(_) => q_k(&equator_point_under(&p)),
    }
}

/// Result of the two-sided grid-coverage comparison.
#[derive(Debug, Clone, Copy)]
pub struct CoverageReport {
    /// Occupied grid cells in each cloud.
    pub cells_a: usize,
    pub cells_b: usize,
    /// Cells of one cloud (holding at least the occupancy threshold) with no
    /// occupied cell of the other within the neighborhood radius; zero in
    /// both directions means the clouds fill the same region at this
    /// resolution.
    pub uncovered_a: usize,
    pub uncovered_b: usize,
    /// Cells occupied by exactly one cloud (diagnostic; nonzero even for
    /// identically distributed finite samples).
    pub strict_mismatches: usize,
}

impl CoverageReport {
    pub fn covered(&self) -> bool {
        self.uncovered_a == 0 && self.uncovered_b == 0
    }
}

type Cell = (i64, i64, i64);

fn cell_counts(cloud: &[OrbitPoint], resolution: f64) -> HashMap<Cell, u64> {
    let mut counts = HashMap::new();
    for p in cloud {
        let cell = (
            (p.x / resolution).floor() as i64,
            (p.y / resolution).floor() as i64,
            (p.z / resolution).floor() as i64,
        );
        *counts.entry(cell).or_insert(0) += 1;
    }
    counts
}

fn uncovered(
    from: &HashMap<Cell, u64>,
    by: &HashMap<Cell, u64>,
    radius: i64,
    min_occupancy: u64,
) -> usize {
    from.iter()
        .filter(|&(_, &count)| count >= min_occupancy)
        .filter(|&(&(x, y, z), _)| {
            !(-radius..=radius).any(|dx| {
                (-radius..=radius).any(|dy| {
                    (-radius..=radius).any(|dz| by.contains_key(&(x + dx, y + dy, z + dz)))
                })
            })
        })
        .count()
}

/// Compares two clouds on a cubic grid: every cell holding at least
/// `min_occupancy` points of either cloud must have an occupied cell of the
/// other within `neighbor_radius` cells (Chebyshev distance), i.e. the
/// occupied sets agree up to one grid step.  Cells below the occupancy
/// threshold are single-sample dust in the far tail of the distribution and
/// neither demand cover nor are excluded from providing it.
pub fn coverage(
    cloud_a: &[OrbitPoint],
    cloud_b: &[OrbitPoint],
    resolution: f64,
    neighbor_radius: i64,
    min_occupancy: u64,
) -> CoverageReport {
    assert!(resolution > 0.0, "resolution must be positive");
    let a = cell_counts(cloud_a, resolution);
    let b = cell_counts(cloud_b, resolution);
    let strict_mismatches = a.keys().filter(|cell| !b.contains_key(cell)).count()
        + b.keys().filter(|cell| !a.contains_key(cell)).count();
    CoverageReport {
        cells_a: a.len(),
        cells_b: b.len(),
        uncovered_a: uncovered(&a, &b, neighbor_radius, min_occupancy),
        uncovered_b: uncovered(&b, &a, neighbor_radius, min_occupancy),
        strict_mismatches,
    }
}
