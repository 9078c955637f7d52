// SPDX-License-Identifier: Apache-2.0

//! Length and inclusion statistics over a range of endpoint distances.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{execute, CheckStatus};
use super::config::Scenario;
use super::HarnessError;
use crate::numeric::{bisect_increasing, MAX_BISECTION_ITER};
use crate::sets::ProximalSet;
use crate::space::{SpaceModel, Vector};

pub const DEFAULT_SWEEP: [f64; 6] = [0.002, 0.005, 0.01, 0.02, 0.05, 0.1];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: f64,
    pub d_over_r: f64,
    pub depth: usize,
    pub polyline_length: f64,
    /// `polyline_length / d`.
    pub length_ratio: f64,
    pub length_bound: Option<f64>,
    /// `polyline_length / length_bound`.
    pub bound_ratio: Option<f64>,
    pub inclusion_radius: Option<f64>,
    pub inclusion_margin: Option<f64>,
    pub all_checks_pass: bool,
}

/// Boundary points `x0 = b(start)` and `x1 = b(t)` with `‖x1 − x0‖ = d`,
/// where `b` is [`ProximalSet::boundary_point`] and `t > start`.
pub fn endpoints_at_distance(
    space: &SpaceModel,
    set: &ProximalSet,
    start: f64,
    d: f64,
) -> Result<(Vector, Vector), HarnessError> {
    let x0 = set.boundary_point(space, start)?;
    let (_, hi) = set.boundary_range();
    let dist = |t: f64| set.boundary_point(space, t).map(|x| space.dist(&x, &x0)).unwrap_or(f64::NAN);
    let t = bisect_increasing(dist, d, start, hi, 1e-15, MAX_BISECTION_ITER)
        .map_err(|e| HarnessError::Config(format!("no boundary point at distance {d}: {e}")))?;
    Ok((x0.clone(), set.boundary_point(space, t)?))
}

/// Re-runs `template` with endpoints at each distance in `ds`. The
/// geodesic check is disabled for speed.
pub fn sweep(template: &Scenario, ds: &[f64], start: f64) -> Result<Vec<SweepRow>, HarnessError> {
    ds.par_iter()
        .map(|&d| {
            let (x0, x1) = endpoints_at_distance(&template.space, &template.set, start, d)?;
            let mut config = template.config.clone();
            config.x0 = x0.coords().to_vec();
            config.x1 = x1.coords().to_vec();
            config.checks.geodesic = false;
            let scenario = Scenario::from_config(config)?;
            let (report, curve) = execute(&scenario);
            let stats = report.curve.as_ref();
            let len = stats.map_or(f64::NAN, |c| c.polyline_length);
            let chord = scenario.space.dist(&scenario.x0, &scenario.x1);
            let length_bound = report.bounds.as_ref().and_then(|b| b.length_bound);
            let inclusion = report.check("inclusion").filter(|c| c.status != CheckStatus::Skipped);
            Ok(SweepRow {
                d: chord,
                d_over_r: chord / scenario.set.reach(),
                depth: curve.map_or(0, |c| c.depth),
                polyline_length: len,
                length_ratio: len / chord,
                length_bound,
                bound_ratio: length_bound.map(|b| len / b),
                inclusion_radius: report.bounds.as_ref().and_then(|b| b.inclusion_radius),
                inclusion_margin: inclusion.and_then(|c| c.margin),
                all_checks_pass: report.pass,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| HarnessError::io("<csv>", e))?;
    Ok(())
}
