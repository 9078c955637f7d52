// SPDX-License-Identifier: Apache-2.0

//! Proximally smooth test sets with distance and projection oracles.
//!
//! Each set carries a declared constant `R`. For the complement of an open
//! ball and for a sphere the projection is radial in every `ℓp` norm. The
//! parabola arc is projected by multi-start golden-section search and
//! polished on the derivative of `‖x − a(t)‖_p^p`.

use std::f64::consts::PI;
use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::golden_section_min;
use crate::space::{SpaceError, SpaceModel, Vector};

const CURVE_STARTS: usize = 64;
const CURVE_PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SetError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("invalid set configuration: {0}")]
    InvalidConfig(String),
    #[error("metric projection is not unique at the center of the set")]
    ProjectionNotUnique,
}

/// A smooth plane curve `t ↦ a(t)` on a compact parameter interval.
pub trait ParametricCurve2d: Debug + Send + Sync {
    fn point(&self, t: f64) -> [f64; 2];
    fn derivative(&self, t: f64) -> [f64; 2];
    fn interval(&self) -> (f64, f64);
}

/// `a(t) = (t, α t²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parabola {
    pub alpha: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl ParametricCurve2d for Parabola {
    fn point(&self, t: f64) -> [f64; 2] {
        [t, self.alpha * t * t]
    }

    fn derivative(&self, t: f64) -> [f64; 2] {
        [1.0, 2.0 * self.alpha * t]
    }

    fn interval(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Parabola,
}

/// Serialized set description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetConfig {
    /// `{x : ‖x − center‖ >= radius}`.
    BallComplement {
        center: Vec<f64>,
        radius: f64,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        reach: Option<f64>,
    },
    /// `{x : ‖x − center‖ = radius}`.
    Sphere {
        center: Vec<f64>,
        radius: f64,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        reach: Option<f64>,
    },
    /// A plane curve; only the parabola arc is shipped.
    #[serde(rename = "parametric_curve_2d")]
    ParametricCurve2d {
        curve: CurveKind,
        alpha: f64,
        #[serde(default = "default_t_range")]
        t_range: [f64; 2],
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        reach: Option<f64>,
    },
    /// `{x : ⟨normal, x⟩ <= offset}`; convex, so any declared `R` is valid.
    HalfSpace {
        normal: Vec<f64>,
        offset: f64,
        #[serde(rename = "R")]
        reach: f64,
    },
}

fn default_t_range() -> [f64; 2] {
    [-1.0, 1.0]
}

#[derive(Debug, Clone)]
enum Shape {
    BallComplement { center: Vector, radius: f64 },
    Sphere { center: Vector, radius: f64 },
    Curve(Arc<dyn ParametricCurve2d>),
    HalfSpace { normal: Vector, offset: f64, dual_norm: f64, direction: Vector },
}

/// A closed set with a declared proximal-smoothness constant `R`.
#[derive(Debug, Clone)]
pub struct ProximalSet {
    shape: Shape,
    reach: f64,
    config: SetConfig,
}

/// Outcome of [`ProximalSet::validate_support_ball`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportBallReport {
    pub checked: usize,
    /// Indices of samples outside the open `R`-neighborhood.
    pub skipped: Vec<usize>,
    pub worst_margin: Option<f64>,
    pub pass: bool,
}

impl ProximalSet {
    pub fn from_config(cfg: &SetConfig, space: &SpaceModel) -> Result<Self, SetError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(SetError::InvalidConfig(format!("{name} must be positive, got {v}")))
            }
        };
        let (shape, reach) = match cfg {
            SetConfig::BallComplement { center, radius, reach } => {
                let radius = positive("radius", *radius)?;
                let center = space.vector(center.clone())?;
                (Shape::BallComplement { center, radius }, positive("R", reach.unwrap_or(radius))?)
            }
            SetConfig::Sphere { center, radius, reach } => {
                let radius = positive("radius", *radius)?;
                let center = space.vector(center.clone())?;
                (Shape::Sphere { center, radius }, positive("R", reach.unwrap_or(radius))?)
            }
            SetConfig::ParametricCurve2d { curve: CurveKind::Parabola, alpha, t_range, reach } => {
                if space.dim() != 2 {
                    return Err(SetError::InvalidConfig("parametric curves need a 2D space".into()));
                }
                let alpha = positive("alpha", *alpha)?;
                if !(t_range[1] > t_range[0]) {
                    return Err(SetError::InvalidConfig("t_range must be increasing".into()));
                }
                let curve = Parabola { alpha, t_min: t_range[0], t_max: t_range[1] };
                let reach = positive("R", reach.unwrap_or(1.0 / (2.0 * alpha)))?;
                (Shape::Curve(Arc::new(curve)), reach)
            }
            SetConfig::HalfSpace { normal, offset, reach } => {
                let normal = space.vector(normal.clone())?;
                let dual_norm = space.dual_norm(&normal)?;
                if dual_norm == 0.0 {
                    return Err(SetError::InvalidConfig("half-space normal is zero".into()));
                }
                // unit ℓp vector v with ⟨normal, v⟩ = ‖normal‖_q
                let q = space.dual_exponent();
                let direction = space.vector(
                    normal.coords().iter().map(|&a| a.signum() * (a.abs() / dual_norm).powf(q - 1.0)).collect(),
                )?;
                (Shape::HalfSpace { normal, offset: *offset, dual_norm, direction }, positive("R", *reach)?)
            }
        };
        Ok(Self { shape, reach, config: cfg.clone() })
    }

    pub fn ball_complement(space: &SpaceModel, center: Vec<f64>, radius: f64) -> Result<Self, SetError> {
        Self::from_config(&SetConfig::BallComplement { center, radius, reach: None }, space)
    }

    pub fn sphere(space: &SpaceModel, center: Vec<f64>, radius: f64) -> Result<Self, SetError> {
        Self::from_config(&SetConfig::Sphere { center, radius, reach: None }, space)
    }

    pub fn parabola(space: &SpaceModel, alpha: f64, reach: Option<f64>) -> Result<Self, SetError> {
        Self::from_config(
            &SetConfig::ParametricCurve2d { curve: CurveKind::Parabola, alpha, t_range: default_t_range(), reach },
            space,
        )
    }

    /// Declared constant `R`.
    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn config(&self) -> &SetConfig {
        &self.config
    }

    /// Sets without interior; grid oracles need a tolerance band for them.
    pub fn is_thin(&self) -> bool {
        matches!(self.shape, Shape::Sphere { .. } | Shape::Curve(_))
    }

    pub fn contains(&self, space: &SpaceModel, x: &Vector, tol: f64) -> Result<bool, SetError> {
        Ok(self.distance(space, x)? <= tol)
    }

    pub fn distance(&self, space: &SpaceModel, x: &Vector) -> Result<f64, SetError> {
        space.norm(x)?;
        Ok(match &self.shape {
            Shape::BallComplement { center, radius } => (radius - space.dist(x, center)).max(0.0),
            Shape::Sphere { center, radius } => (space.dist(x, center) - radius).abs(),
            Shape::Curve(curve) => project_curve(space, curve.as_ref(), x).2,
            Shape::HalfSpace { normal, offset, dual_norm, .. } => ((normal.dot(x) - offset) / dual_norm).max(0.0),
        })
    }

    /// A metric projection of `x` onto the set.
    pub fn project(&self, space: &SpaceModel, x: &Vector) -> Result<Vector, SetError> {
        space.norm(x)?;
        match &self.shape {
            Shape::BallComplement { center, radius } => {
                let r = space.dist(x, center);
                if r >= *radius {
                    return Ok(x.clone());
                }
                radial(center, *radius, x, r)
            }
            Shape::Sphere { center, radius } => radial(center, *radius, x, space.dist(x, center)),
            Shape::Curve(curve) => {
                let (t, _, _) = project_curve(space, curve.as_ref(), x);
                Ok(space.vector(curve.point(t).to_vec())?)
            }
            Shape::HalfSpace { normal, offset, dual_norm, direction } => {
                let excess = (normal.dot(x) - offset) / dual_norm;
                if excess <= 0.0 {
                    Ok(x.clone())
                } else {
                    Ok(x - &(direction * excess))
                }
            }
        }
    }

    /// Parameter range of [`ProximalSet::boundary_point`].
    pub fn boundary_range(&self) -> (f64, f64) {
        match &self.shape {
            Shape::BallComplement { .. } | Shape::Sphere { .. } => (-PI, PI),
            Shape::Curve(c) => c.interval(),
            Shape::HalfSpace { .. } => (-2.0 * self.reach, 2.0 * self.reach),
        }
    }

    /// A point of the set's boundary, parametrized by angle (balls and
    /// spheres, in the first two coordinates), curve parameter, or arc
    /// position along a boundary line of a half-space.
    pub fn boundary_point(&self, space: &SpaceModel, param: f64) -> Result<Vector, SetError> {
        let dim = space.dim();
        match &self.shape {
            Shape::BallComplement { center, radius } | Shape::Sphere { center, radius } => {
                let mut d = vec![0.0; dim];
                d[0] = param.cos();
                d[1] = param.sin();
                let d = space.vector(d)?;
                let n = space.norm_unchecked(&d);
                Ok(center + &(&d * (radius / n)))
            }
            Shape::Curve(c) => {
                let (lo, hi) = c.interval();
                Ok(space.vector(c.point(param.clamp(lo, hi)).to_vec())?)
            }
            Shape::HalfSpace { normal, offset, .. } => {
                let n2 = normal.dot(normal);
                let base = normal * (offset / n2);
                let mut tangent = vec![0.0; dim];
                tangent[0] = -normal[1];
                tangent[1] = normal[0];
                let tangent = space.vector(tangent)?;
                let tn = tangent.dot(&tangent).sqrt();
                if tn == 0.0 {
                    return Ok(base);
                }
                Ok(&base + &(&tangent * (param / tn)))
            }
        }
    }

    /// Checks `dist(x + R(u − x)/‖u − x‖, A) >= R − tol` with `x = P_A(u)`
    /// for every sample `u` of the open `R`-neighborhood.
    pub fn validate_support_ball(
        &self,
        space: &SpaceModel,
        samples: &[Vector],
        tol: f64,
    ) -> Result<SupportBallReport, SetError> {
        let mut report = SupportBallReport { checked: 0, skipped: Vec::new(), worst_margin: None, pass: true };
        for (i, u) in samples.iter().enumerate() {
            let d = self.distance(space, u)?;
            if !(d > 0.0 && d < self.reach) {
                report.skipped.push(i);
                continue;
            }
            let x = self.project(space, u)?;
            let dir = u - &x;
            let len = space.norm_unchecked(&dir);
            let probe = &x + &(&dir * (self.reach / len));
            let margin = self.distance(space, &probe)? - self.reach;
            report.checked += 1;
            report.worst_margin = Some(report.worst_margin.map_or(margin, |m: f64| m.min(margin)));
            if margin < -tol {
                report.pass = false;
            }
        }
        Ok(report)
    }

    /// Deterministic random points of the open `R`-neighborhood, obtained by
    /// pushing boundary points along random directions.
    pub fn neighborhood_samples(&self, space: &SpaceModel, count: usize, seed: u64) -> Vec<Vector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = self.boundary_range();
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count && attempts < 100 * count.max(1) {
            attempts += 1;
            let Ok(b) = self.boundary_point(space, rng.gen_range(lo..=hi)) else {
                continue;
            };
            let dir: Vec<f64> = (0..space.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let Ok(dir) = space.vector(dir) else { continue };
            let n = space.norm_unchecked(&dir);
            if n < 1e-3 {
                continue;
            }
            let step = rng.gen_range(0.0..self.reach) / n;
            let u = &b + &(&dir * step);
            if let Ok(d) = self.distance(space, &u) {
                if d > 0.0 && d < self.reach {
                    out.push(u);
                }
            }
        }
        out
    }
}

fn radial(center: &Vector, radius: f64, x: &Vector, r: f64) -> Result<Vector, SetError> {
    if r == 0.0 {
        return Err(SetError::ProjectionNotUnique);
    }
    Ok(center + &(&(x - center) * (radius / r)))
}

fn curve_dist(space: &SpaceModel, curve: &dyn ParametricCurve2d, x: &Vector, t: f64) -> f64 {
    let a = curve.point(t);
    crate::space::lp_norm(&[x[0] - a[0], x[1] - a[1]], space.p())
}

/// Derivative of `t ↦ ‖x − a(t)‖_p^p`, up to the positive factor `p`.
fn curve_dist_slope(space: &SpaceModel, curve: &dyn ParametricCurve2d, x: &Vector, t: f64) -> f64 {
    let a = curve.point(t);
    let da = curve.derivative(t);
    let pm1 = space.p() - 1.0;
    (0..2)
        .map(|i| {
            let r = x[i] - a[i];
            -r.signum() * r.abs().powf(pm1) * da[i]
        })
        .sum()
}

/// Returns `(t, a(t), ‖x − a(t)‖)` for the nearest curve point.
fn project_curve(space: &SpaceModel, curve: &dyn ParametricCurve2d, x: &Vector) -> (f64, [f64; 2], f64) {
    let (lo, hi) = curve.interval();
    let step = (hi - lo) / CURVE_STARTS as f64;
    let grid: Vec<(f64, f64)> = (0..=CURVE_STARTS)
        .map(|i| {
            let t = if i == CURVE_STARTS { hi } else { lo + i as f64 * step };
            (t, curve_dist(space, curve, x, t))
        })
        .collect();

    let mut best: Option<(f64, f64)> = None;
    for i in 0..grid.len() {
        let left = if i > 0 { grid[i - 1].1 } else { f64::INFINITY };
        let right = grid.get(i + 1).map_or(f64::INFINITY, |g| g.1);
        if grid[i].1 > left || grid[i].1 > right {
            continue;
        }
        let a = grid[i.saturating_sub(1)].0;
        let b = grid[(i + 1).min(grid.len() - 1)].0;
        let (mut t, mut d) = golden_section_min(|t| curve_dist(space, curve, x, t), a, b, CURVE_PARAM_TOL, 200);
        // the distance is flat at the minimizer, so a bracketed slope root
        // wins even when rounding makes its value an ulp larger
        if let Some(tp) = polish(space, curve, x, t, a, b) {
            t = tp;
            d = curve_dist(space, curve, x, tp);
        }
        best = match best {
            Some((bt, bd)) if bd < d || (bd == d && bt <= t) => Some((bt, bd)),
            _ => Some((t, d)),
        };
    }
    let (t, d) = best.unwrap_or((lo, grid[0].1));
    (t, curve.point(t), d)
}

/// Bisection on the sign change of the distance slope around `t`.
fn polish(space: &SpaceModel, curve: &dyn ParametricCurve2d, x: &Vector, t: f64, a: f64, b: f64) -> Option<f64> {
    let delta = 1e-6 * (b - a);
    let (mut lo, mut hi) = ((t - delta).max(a), (t + delta).min(b));
    let g_lo = curve_dist_slope(space, curve, x, lo);
    let g_hi = curve_dist_slope(space, curve, x, hi);
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if curve_dist_slope(space, curve, x, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn contains_examples() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        assert!(bc.contains(&l2, &v(&[2.0, 0.0]), 1e-9).unwrap());
        assert!(!bc.contains(&l2, &v(&[0.5, 0.0]), 1e-9).unwrap());
        let sp = ProximalSet::sphere(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let h = 0.5f64.sqrt();
        assert!(sp.contains(&l2, &v(&[h, h]), 1e-9).unwrap());
    }

    #[test]
    fn projection_examples() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let p = bc.project(&l2, &v(&[0.5, 0.5])).unwrap();
        let h = 0.5f64.sqrt();
        assert!((p[0] - h).abs() < 1e-15 && (p[1] - h).abs() < 1e-15);
        assert_eq!(bc.project(&l2, &v(&[0.0, 0.0])), Err(SetError::ProjectionNotUnique));

        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let bc4 = ProximalSet::ball_complement(&l4, vec![0.0, 0.0], 1.0).unwrap();
        let p = bc4.project(&l4, &v(&[0.3, 0.3])).unwrap();
        let c = 2f64.powf(-0.25);
        assert!((p[0] - c).abs() < 1e-15 && (p[1] - c).abs() < 1e-15);

        let sp4 = ProximalSet::sphere(&l4, vec![0.0, 0.0], 1.0).unwrap();
        let on = v(&[c, c]);
        let p = sp4.project(&l4, &on).unwrap();
        assert!(l4.dist(&p, &on) < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        assert_eq!(bc.distance(&l2, &v(&[0.5, 0.0])).unwrap(), 0.5);
        assert_eq!(bc.distance(&l2, &v(&[3.0, 1.0])).unwrap(), 0.0);
        let sp = ProximalSet::sphere(&l2, vec![0.0, 0.0], 1.0).unwrap();
        assert_eq!(sp.distance(&l2, &v(&[2.0, 0.0])).unwrap(), 1.0);
    }

    #[test]
    fn support_ball_examples() {
        let l2 = SpaceModel::euclidean(2);
        let bc = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let r = bc.validate_support_ball(&l2, &[v(&[0.9, 0.0])], 1e-9).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.pass);
        assert!(r.worst_margin.unwrap().abs() < 1e-15);

        let sp = ProximalSet::sphere(&l2, vec![0.0, 0.0], 1.0).unwrap();
        let r = sp.validate_support_ball(&l2, &[v(&[0.5, 0.0])], 1e-9).unwrap();
        assert!(r.pass && r.worst_margin.unwrap() >= -1e-9);

        let r = sp.validate_support_ball(&l2, &[], 1e-9).unwrap();
        assert_eq!(r.checked, 0);
        assert!(r.worst_margin.is_none());

        // far away and in-set samples are skipped
        let r = bc.validate_support_ball(&l2, &[v(&[5.0, 0.0])], 1e-9).unwrap();
        assert_eq!(r.skipped, vec![0]);
    }

    #[test]
    fn parabola_projection_matches_brute_force() {
        let l2 = SpaceModel::euclidean(2);
        let par = ProximalSet::parabola(&l2, 0.5, None).unwrap();
        assert_eq!(par.reach(), 1.0);
        for x in [[0.3, 0.5], [-0.7, 0.1], [0.0, 0.9], [1.5, 0.2], [0.2, -0.4]] {
            let x = v(&x);
            let d = par.distance(&l2, &x).unwrap();
            let brute = (0..=200_000)
                .map(|i| {
                    let t = -1.0 + 2.0 * i as f64 / 200_000.0;
                    l2.dist(&x, &v(&[t, 0.5 * t * t]))
                })
                .fold(f64::INFINITY, f64::min);
            assert!(d <= brute + 1e-15 && brute - d < 1e-9, "{d} {brute}");
        }
    }

    #[test]
    fn parabola_projection_is_stationary() {
        let l3 = SpaceModel::lp(3.0, 2).unwrap();
        let par = ProximalSet::parabola(&l3, 0.5, Some(0.5)).unwrap();
        let x = v(&[0.4, 0.2]);
        let p = par.project(&l3, &x).unwrap();
        let Shape::Curve(c) = &par.shape else { unreachable!() };
        let slope = curve_dist_slope(&l3, c.as_ref(), &x, p[0]);
        assert!(slope.abs() < 1e-12, "{slope}");
    }

    #[test]
    fn half_space_oracles() {
        let l3 = SpaceModel::lp(3.0, 2).unwrap();
        let hs =
            ProximalSet::from_config(&SetConfig::HalfSpace { normal: vec![1.0, 2.0], offset: 1.0, reach: 1.0 }, &l3)
                .unwrap();
        let x = v(&[2.0, 1.0]);
        let p = hs.project(&l3, &x).unwrap();
        let d = hs.distance(&l3, &x).unwrap();
        assert!((l3.dist(&x, &p) - d).abs() < 1e-12);
        assert!((p[0] + 2.0 * p[1] - 1.0).abs() < 1e-12);
        // brute force over the boundary line
        let brute = (0..=100_000)
            .map(|i| {
                let s = -5.0 + 10.0 * i as f64 / 100_000.0;
                l3.dist(&x, &v(&[1.0 - 2.0 * s, s]))
            })
            .fold(f64::INFINITY, f64::min);
        assert!((brute - d).abs() < 1e-6);
    }

    #[test]
    fn every_shipped_set_is_supported_by_balls() {
        let l2 = SpaceModel::euclidean(2);
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let l15 = SpaceModel::lp(1.5, 3).unwrap();
        let cases = vec![
            (l2.clone(), ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap()),
            (l2.clone(), ProximalSet::sphere(&l2, vec![0.5, -0.5], 2.0).unwrap()),
            (l2.clone(), ProximalSet::parabola(&l2, 0.5, None).unwrap()),
            (l4.clone(), ProximalSet::ball_complement(&l4, vec![0.0, 0.0], 1.0).unwrap()),
            (l4.clone(), ProximalSet::sphere(&l4, vec![0.0, 0.0], 1.0).unwrap()),
            (l15.clone(), ProximalSet::ball_complement(&l15, vec![0.0, 0.0, 0.0], 1.0).unwrap()),
        ];
        for (space, set) in cases {
            let samples = set.neighborhood_samples(&space, 1000, 42);
            assert_eq!(samples.len(), 1000);
            let r = set.validate_support_ball(&space, &samples, 1e-8).unwrap();
            assert!(r.pass, "{:?}: {:?}", set.config(), r.worst_margin);
            assert_eq!(r.checked, 1000);
        }
    }

    #[test]
    fn radial_projection_is_idempotent() {
        let l4 = SpaceModel::lp(4.0, 3).unwrap();
        let set = ProximalSet::sphere(&l4, vec![1.0, 0.0, -1.0], 0.7).unwrap();
        for u in set.neighborhood_samples(&l4, 50, 9) {
            let p = set.project(&l4, &u).unwrap();
            let pp = set.project(&l4, &p).unwrap();
            assert!(l4.dist(&p, &pp) < 1e-14);
            assert!(set.distance(&l4, &p).unwrap() < 1e-14);
        }
    }

    #[test]
    fn config_json() {
        let l2 = SpaceModel::euclidean(2);
        let cfg: SetConfig =
            serde_json::from_str(r#"{"kind":"ball_complement","center":[0,0],"radius":1.0,"R":1.0}"#).unwrap();
        ProximalSet::from_config(&cfg, &l2).unwrap();
        let cfg: SetConfig =
            serde_json::from_str(r#"{"kind":"parametric_curve_2d","curve":"parabola","alpha":0.5}"#).unwrap();
        let set = ProximalSet::from_config(&cfg, &l2).unwrap();
        assert_eq!(set.reach(), 1.0);
        let bad: SetConfig = serde_json::from_str(r#"{"kind":"sphere","center":[0,0,0],"radius":1.0}"#).unwrap();
        assert!(ProximalSet::from_config(&bad, &l2).is_err());
    }
}
