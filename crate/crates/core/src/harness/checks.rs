// SPDX-License-Identifier: Apache-2.0

//! Checks (a)–(h) on a built curve plus the optional grid-oracle comparison.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::Scenario;
use super::hull::hull_fit;
use super::oracle::geodesic_oracle_2d;
use crate::bounds::{self, BoundsContext};
use crate::builder::{build_curve, polyline_length, BuildError, BuildWarning, DyadicCurve, FeasibilityReport};
use crate::space::{SpaceModel, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Gate not met or nothing to check; never counted as a pass.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Positive when the inequality holds with room to spare.
    pub margin: Option<f64>,
    pub details: Value,
}

impl CheckRecord {
    fn new(name: &str, ok: bool, margin: f64, details: Value) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name: name.into(), status, margin: Some(margin), details }
    }

    fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skipped,
            margin: None,
            details: json!({ "reason": reason.into() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveStats {
    pub depth: usize,
    pub vertex_count: usize,
    pub chord: f64,
    pub polyline_length: f64,
    pub truncation_bound: Option<f64>,
    pub deltas: Vec<f64>,
    pub lengths: Vec<f64>,
    /// Segment interiors lie within this distance of a checked vertex.
    pub unchecked_segment_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub pass: bool,
    pub counts: Counts,
    pub checks: Vec<CheckRecord>,
    pub bounds: Option<BoundsContext>,
    pub feasibility: Option<FeasibilityReport>,
    pub curve: Option<CurveStats>,
    pub build_error: Option<String>,
    pub warnings: Vec<BuildWarning>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON with keys in sorted order and no run-dependent fields.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        serde_json::to_string_pretty(&value).expect("value is serializable")
    }
}

/// Builds the curve and evaluates every enabled check.
pub fn run_scenario(scenario: &Scenario) -> VerificationReport {
    execute(scenario).0
}

/// As [`run_scenario`], also returning the curve (partial on slice failure).
pub fn execute(scenario: &Scenario) -> (VerificationReport, Option<DyadicCurve>) {
    let params = scenario.build_params();
    let (curve, build_error) = match build_curve(&scenario.space, &scenario.set, &scenario.x0, &scenario.x1, &params) {
        Ok(c) => (Some(c), None),
        Err(BuildError::Slice { level, index, source, partial }) => {
            (Some(*partial), Some(format!("slice-projection failed at level {level}, segment {index}: {source}")))
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let d = scenario.space.dist(&scenario.x0, &scenario.x1);
    let ctx = if d > 0.0 { BoundsContext::new(scenario.space.modulus(), d, scenario.set.reach()).ok() } else { None };
    let checks = match &curve {
        Some(c) if d == 0.0 => degenerate_checks(scenario, c),
        Some(c) => Checker { scenario, curve: c, ctx: ctx.as_ref(), d }.all(),
        None => enabled_names(scenario).into_iter().map(|n| CheckRecord::skipped(n, "no curve was built")).collect(),
    };
    let counts = Counts {
        pass: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
        fail: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
        skipped: checks.iter().filter(|c| c.status == CheckStatus::Skipped).count(),
    };
    let report = VerificationReport {
        scenario: scenario.config.name.clone(),
        pass: counts.fail == 0 && build_error.is_none(),
        counts,
        checks,
        bounds: ctx,
        feasibility: curve.as_ref().and_then(|c| c.feasibility.clone()),
        curve: curve.as_ref().map(|c| CurveStats {
            depth: c.depth,
            vertex_count: c.vertices.len(),
            chord: d,
            polyline_length: polyline_length(c),
            truncation_bound: c.truncation_bound,
            deltas: c.deltas.clone(),
            lengths: c.lengths.clone(),
            unchecked_segment_residual: *c.deltas.last().unwrap_or(&0.0),
        }),
        build_error,
        warnings: curve.as_ref().map(|c| c.warnings.clone()).unwrap_or_default(),
    };
    (report, curve)
}

fn enabled_names(scenario: &Scenario) -> Vec<&'static str> {
    let t = &scenario.config.checks;
    [
        ("membership", t.membership),
        ("delta_decay", t.delta_decay),
        ("length", t.length),
        ("inclusion", t.inclusion),
        ("cylinder", t.cylinder),
        ("g2", t.g2),
        ("waist", t.waist),
        ("midpoint", t.midpoint),
        ("geodesic", t.geodesic),
    ]
    .into_iter()
    .filter_map(|(n, on)| on.then_some(n))
    .collect()
}

fn degenerate_checks(scenario: &Scenario, curve: &DyadicCurve) -> Vec<CheckRecord> {
    enabled_names(scenario)
        .into_iter()
        .map(|n| {
            if n == "membership" {
                membership(scenario, curve)
            } else {
                CheckRecord::new(n, true, 0.0, json!({ "degenerate": true }))
            }
        })
        .collect()
}

fn membership(scenario: &Scenario, curve: &DyadicCurve) -> CheckRecord {
    let tol = scenario.config.slicer.membership_tol;
    let worst = curve
        .vertices
        .par_iter()
        .map(|v| scenario.set.distance(&scenario.space, v).unwrap_or(f64::INFINITY))
        .reduce(|| 0.0, f64::max);
    CheckRecord::new("membership", worst <= tol, tol - worst, json!({ "max_distance": worst, "tol": tol }))
}

/// Splits `v − x0 = s(x1 − x0) + w` with `w` quasi-orthogonal to `x1 − x0`;
/// returns `(g1, g2) = (‖w‖, |s| d)`.
fn chord_decomposition(space: &SpaceModel, x0: &Vector, x1: &Vector, d: f64, v: &Vector) -> (f64, f64) {
    let chord = x1 - x0;
    let j = space.dual_unchecked(&chord, d);
    let rel = v - x0;
    let s = j.dot(&rel) / d;
    let w = &rel - &(&chord * s);
    (space.norm_unchecked(&w), s.abs() * d)
}

struct Checker<'a> {
    scenario: &'a Scenario,
    curve: &'a DyadicCurve,
    ctx: Option<&'a BoundsContext>,
    d: f64,
}

impl Checker<'_> {
    fn all(&self) -> Vec<CheckRecord> {
        enabled_names(self.scenario)
            .into_iter()
            .map(|n| match n {
                "membership" => membership(self.scenario, self.curve),
                "delta_decay" => self.delta_decay(),
                "length" => self.length(),
                "inclusion" => self.inclusion(),
                "cylinder" => self.cylinder(),
                "g2" => self.g2(),
                "waist" => self.waist(),
                "midpoint" => self.midpoint(),
                _ => self.geodesic(),
            })
            .collect()
    }

    fn slack(&self) -> f64 {
        self.scenario.config.tolerances.bound_slack
    }

    fn length_gate(&self) -> Result<&BoundsContext, String> {
        match self.ctx {
            Some(c) if c.d_over_r < c.beta_l && c.mu.is_some() => Ok(c),
            Some(c) => Err(format!("d/R = {} is not below beta_L = {}", c.d_over_r, c.beta_l)),
            None => Err("bounds unavailable".into()),
        }
    }

    fn inclusion_gate(&self) -> Result<&BoundsContext, String> {
        match self.ctx {
            Some(c) if c.d_over_r < c.beta_i && c.mu.is_some() => Ok(c),
            Some(c) => Err(format!("d/R = {} is not below beta_I = {}", c.d_over_r, c.beta_i)),
            None => Err("bounds unavailable".into()),
        }
    }

    fn delta_decay(&self) -> CheckRecord {
        let ctx = match self.length_gate() {
            Ok(c) => c,
            Err(reason) => return CheckRecord::skipped("delta_decay", reason),
        };
        let mu = ctx.mu.expect("gated");
        let rel = self.scenario.config.tolerances.decay_rel_slack;
        let d0 = self.curve.deltas[0];
        // level 0 is the identity Δ0 <= Δ0
        let mut worst = f64::INFINITY;
        let mut worst_level = 0;
        for (i, &di) in self.curve.deltas.iter().enumerate().skip(1) {
            let bound = bounds::delta_decay_bound(mu, d0, i);
            let m = (bound * (1.0 + rel) - di) / d0;
            if m < worst {
                worst = m;
                worst_level = i;
            }
        }
        if worst == f64::INFINITY {
            return CheckRecord::new("delta_decay", true, rel, json!({ "mu": mu, "levels": 0 }));
        }
        CheckRecord::new(
            "delta_decay",
            worst >= 0.0,
            worst,
            json!({ "mu": mu, "worst_level": worst_level, "margin_relative_to_delta0": true }),
        )
    }

    fn length(&self) -> CheckRecord {
        let ctx = match self.length_gate() {
            Ok(c) => c,
            Err(reason) => return CheckRecord::skipped("length", reason),
        };
        let Some(bound) = ctx.length_bound else {
            return CheckRecord::skipped("length", "length bound undefined");
        };
        let len = polyline_length(self.curve);
        let limit_upper = self.curve.truncation_bound.map(|t| len + t);
        CheckRecord::new(
            "length",
            len <= bound + self.slack(),
            bound - len,
            json!({ "polyline_length": len, "length_bound": bound, "limit_length_upper": limit_upper }),
        )
    }

    fn inclusion(&self) -> CheckRecord {
        let ctx = match self.inclusion_gate() {
            Ok(c) => c,
            Err(reason) => return CheckRecord::skipped("inclusion", reason),
        };
        let Some(r) = ctx.inclusion_radius else {
            return CheckRecord::skipped("inclusion", "inclusion radius undefined");
        };
        let sc = self.scenario;
        let mid = sc.x0.midpoint(&sc.x1);
        let (worst, at) = self
            .curve
            .vertices
            .par_iter()
            .enumerate()
            .map(|(j, v)| (hull_fit(&sc.space, &sc.x0, &sc.x1, &mid, r, v).excess, j))
            .reduce(|| (f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a });
        CheckRecord::new(
            "inclusion",
            worst <= self.slack(),
            -worst,
            json!({ "radius": r, "worst_vertex": at, "unchecked_segment_residual": self.curve.deltas.last() }),
        )
    }

    fn cylinder(&self) -> CheckRecord {
        let ctx = match self.inclusion_gate() {
            Ok(c) => c,
            Err(reason) => return CheckRecord::skipped("cylinder", reason),
        };
        let Some(bound) = ctx.cylinder_bound else {
            return CheckRecord::skipped("cylinder", "cylinder bound undefined");
        };
        let sc = self.scenario;
        let g1 = self
            .curve
            .vertices
            .par_iter()
            .map(|v| chord_decomposition(&sc.space, &sc.x0, &sc.x1, self.d, v).0)
            .reduce(|| 0.0, f64::max);
        CheckRecord::new(
            "cylinder",
            g1 <= bound + self.slack(),
            bound - g1,
            json!({ "max_g1": g1, "cylinder_bound": bound }),
        )
    }

    fn g2(&self) -> CheckRecord {
        if let Err(reason) = self.inclusion_gate() {
            return CheckRecord::skipped("g2", reason);
        }
        let sc = self.scenario;
        let n = self.curve.vertices.len() - 1;
        let floor = bounds::g2_floor(self.d);
        let min_g2 = self.curve.vertices[n / 2..]
            .iter()
            .map(|v| chord_decomposition(&sc.space, &sc.x0, &sc.x1, self.d, v).1)
            .fold(f64::INFINITY, f64::min);
        CheckRecord::new(
            "g2",
            min_g2 + self.slack() >= floor,
            min_g2 - floor,
            json!({ "min_g2": min_g2, "floor": floor, "vertices_checked": n - n / 2 + 1 }),
        )
    }

    fn waist(&self) -> CheckRecord {
        let sc = self.scenario;
        let model = sc.space.modulus();
        let reach = sc.set.reach();
        let threshold = match bounds::omega_inv_eighth(model) {
            Ok(t) => t,
            Err(e) => return CheckRecord::skipped("waist", e.to_string()),
        };
        let c = self.curve;
        let nodes: Vec<(usize, usize)> =
            (1..=c.depth).flat_map(|i| (1..(1usize << i)).step_by(2).map(move |j| (i, j))).collect();
        let results: Vec<Option<f64>> = nodes
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (c.vertex(i, j - 1), c.vertex(i, j + 1));
                let di = sc.space.dist(a, b);
                if di == 0.0 || di / reach >= threshold {
                    return None;
                }
                let bound = bounds::r_prime(model, di, reach).ok()?;
                Some(bound - sc.space.dist(c.vertex(i, j), &a.midpoint(b)))
            })
            .collect();
        let applied: Vec<f64> = results.iter().flatten().copied().collect();
        let skipped = results.len() - applied.len();
        if applied.is_empty() {
            return CheckRecord::skipped("waist", format!("no node below omega^-1(1/8) ({skipped} skipped)"));
        }
        let worst = applied.iter().copied().fold(f64::INFINITY, f64::min);
        CheckRecord::new(
            "waist",
            worst >= -self.slack(),
            worst,
            json!({ "nodes_checked": applied.len(), "nodes_skipped": skipped }),
        )
    }

    fn midpoint(&self) -> CheckRecord {
        let sc = self.scenario;
        let model = sc.space.modulus();
        let reach = sc.set.reach();
        let m = sc.config.tolerances.midpoint_samples.max(1);
        let c = self.curve;
        let mut chords = vec![(sc.x0.clone(), sc.x1.clone())];
        for i in 1..=c.depth.min(3) {
            for j in 0..(1usize << i) {
                chords.push((c.vertex(i, j).clone(), c.vertex(i, j + 1).clone()));
            }
        }
        let mut worst = f64::INFINITY;
        let mut checked = 0;
        let mut skipped = 0;
        for (a, b) in &chords {
            let di = sc.space.dist(a, b);
            if di / reach >= 2.0 || di == 0.0 {
                skipped += 1;
                continue;
            }
            for k in 1..=m {
                let lambda = k as f64 / (m + 1) as f64;
                let x = a.lerp(b, lambda);
                let (Ok(bound), Ok(dist)) =
                    (bounds::midpoint_dist_bound(model, di, reach, lambda), sc.set.distance(&sc.space, &x))
                else {
                    skipped += 1;
                    continue;
                };
                worst = worst.min(bound - dist);
                checked += 1;
            }
        }
        if checked == 0 {
            return CheckRecord::skipped("midpoint", "no chord with d/R < 2");
        }
        CheckRecord::new(
            "midpoint",
            worst >= -self.slack(),
            worst,
            json!({ "samples_checked": checked, "skipped": skipped }),
        )
    }

    fn geodesic(&self) -> CheckRecord {
        let sc = self.scenario;
        if sc.space.dim() != 2 {
            return CheckRecord::skipped("geodesic", "grid oracle is planar only");
        }
        match geodesic_oracle_2d(&sc.space, &sc.set, &sc.x0, &sc.x1, sc.config.oracle.grid_n) {
            Ok(o) => {
                let len = polyline_length(self.curve);
                let m = o.length + o.metrication_error - len;
                CheckRecord::new(
                    "geodesic",
                    m >= 0.0,
                    m,
                    json!({ "oracle_length": o.length, "metrication_error": o.metrication_error, "h": o.h }),
                )
            }
            Err(e) => CheckRecord::skipped("geodesic", e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ScenarioConfig;

    fn circle(theta: f64) -> Scenario {
        let cfg: ScenarioConfig = serde_json::from_value(json!({
            "name": "circle",
            "space": {"family": "lp", "p": 2.0, "dim": 2, "modulus": {"kind": "exact_hilbert"}},
            "set": {"kind": "ball_complement", "center": [0.0, 0.0], "radius": 1.0, "R": 1.0},
            "x0": [1.0, 0.0],
            "x1": [theta.cos(), theta.sin()],
            "builder": {"max_depth": 10},
        }))
        .unwrap();
        Scenario::from_config(cfg).unwrap()
    }

    #[test]
    fn circle_passes_everything() {
        let r = run_scenario(&circle(2.0 * 0.005f64.asin()));
        assert!(r.pass, "{}", r.to_canonical_json());
        assert_eq!(r.counts.skipped, 0);
        assert_eq!(r.counts.pass, 8);
        assert!(r.check("geodesic").is_none());
        let m = r.check("length").unwrap().margin.unwrap();
        assert!((m - (0.010_000_427_665_7 - 0.010_000_041_667_1)).abs() < 1e-11, "{m}");
    }

    #[test]
    fn inclusion_skipped_above_beta_i() {
        let r = run_scenario(&circle(2.0 * 0.05f64.asin()));
        assert_eq!(r.check("inclusion").unwrap().status, CheckStatus::Skipped);
        assert_eq!(r.check("length").unwrap().status, CheckStatus::Pass);
        assert!(r.pass);
    }

    #[test]
    fn degenerate_passes() {
        let r = run_scenario(&circle(0.0));
        assert!(r.pass && r.counts.fail == 0);
        assert_eq!(r.curve.as_ref().unwrap().polyline_length, 0.0);
    }

    #[test]
    fn gate_failure_is_reported() {
        let r = run_scenario(&circle(0.3));
        assert!(!r.pass);
        assert!(r.build_error.is_some() && r.curve.is_none());
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Skipped));
    }

    #[test]
    fn reports_are_deterministic() {
        let s = circle(0.02);
        assert_eq!(run_scenario(&s).to_canonical_json(), run_scenario(&s).to_canonical_json());
    }

    #[test]
    fn decomposition_is_exact_on_the_chord() {
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let (x0, x1) = (Vector::new(vec![0.1, 0.2]).unwrap(), Vector::new(vec![0.5, -0.1]).unwrap());
        let d = l4.dist(&x0, &x1);
        let (g1, g2) = chord_decomposition(&l4, &x0, &x1, d, &x0.lerp(&x1, 0.3));
        assert!(g1 < 1e-15 && (g2 - 0.3 * d).abs() < 1e-15);
    }
}
