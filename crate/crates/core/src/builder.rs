// SPDX-License-Identifier: Apache-2.0

//! Dyadic midpoint slice-projection refinement.
//!
//! Level `i` holds the vertices `f(j/2^i)`, `0 <= j <= 2^i`. Each level keeps
//! the previous vertices at even indices and inserts the slice-projection of
//! every segment midpoint at odd ones.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::sets::{ProximalSet, SetConfig, SetError};
use crate::slicer::{slice_with_threshold, SliceError, SliceWarning, SlicerParams};
use crate::space::{ModulusModel, SpaceError, SpaceModel, Vector};

/// Memory cap: `2^20 + 1` vertices.
pub const MAX_DEPTH_LIMIT: usize = 20;

#[derive(Debug, Error, Clone)]
pub enum BuildError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("max_depth {0} exceeds the limit {MAX_DEPTH_LIMIT}")]
    DepthTooLarge(usize),
    #[error("endpoint x{which} is at distance {distance} from the set")]
    EndpointNotInSet { which: u8, distance: f64 },
    #[error("d/R = {d_over_r} is not below beta_L = {beta_l}; disable enforce_gates to build anyway")]
    Gate { d_over_r: f64, beta_l: f64 },
    #[error("slice-projection failed at level {level}, segment {index}: {source}")]
    Slice { level: usize, index: usize, source: SliceError, partial: Box<DyadicCurve> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildParams {
    pub max_depth: usize,
    /// Stop once `Δ_i <= delta_stop`; `None` means `1e-9 · Δ0`.
    pub delta_stop: Option<f64>,
    pub enforce_gates: bool,
    /// Supplied separately in scenario files.
    #[serde(skip)]
    pub slicer: SlicerParams,
}

impl Default for BuildParams {
    fn default() -> Self {
        Self { max_depth: 14, delta_stop: None, enforce_gates: true, slicer: SlicerParams::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub d: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub d_over_r: f64,
    pub mu: Option<f64>,
    pub omega_inv_eighth: f64,
    /// `d/R < ω⁻¹(1/8)`.
    pub assumption1: bool,
    /// `μ < 2`.
    pub assumption2: bool,
    /// `μ^s / 2^{s−1} < 1`.
    pub assumption3: bool,
    pub beta_l: f64,
    pub beta_i: f64,
}

impl FeasibilityReport {
    pub fn length_gate(&self) -> bool {
        self.d_over_r < self.beta_l
    }

    pub fn inclusion_gate(&self) -> bool {
        self.d_over_r < self.beta_i
    }
}

pub fn check_feasibility(model: &ModulusModel, d: f64, r: f64) -> Result<FeasibilityReport, BuildError> {
    let s = model.power_type().s;
    let omega_inv_eighth = bounds::omega_inv_eighth(model)?;
    let mu = bounds::mu(model, d, r).ok();
    let d_over_r = d / r;
    Ok(FeasibilityReport {
        d,
        r,
        d_over_r,
        mu,
        omega_inv_eighth,
        assumption1: d_over_r < omega_inv_eighth,
        assumption2: mu.is_some_and(|m| m < 2.0),
        assumption3: mu.is_some_and(|m| m.powf(s) / 2f64.powf(s - 1.0) < 1.0),
        beta_l: bounds::beta_l(model)?,
        beta_i: bounds::beta_i(model, s)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BuildWarning {
    /// Built with `enforce_gates = false` above `β_L`.
    LengthGateOpen {
        d_over_r: f64,
        beta_l: f64,
    },
    Slice {
        level: usize,
        index: usize,
        warning: SliceWarning,
    },
}

/// Vertex table of the dyadic curve at its final depth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicCurve {
    pub depth: usize,
    /// `vertices[j] = f(j / 2^depth)`.
    pub vertices: Vec<Vector>,
    /// `deltas[i]`: longest segment at level `i`.
    pub deltas: Vec<f64>,
    /// Polyline length at every level.
    pub lengths: Vec<f64>,
    pub space: SpaceModel,
    pub set: SetConfig,
    pub feasibility: Option<FeasibilityReport>,
    /// Bound on the length still to be gained past the final depth.
    pub truncation_bound: Option<f64>,
    pub warnings: Vec<BuildWarning>,
}

impl DyadicCurve {
    /// Vertex `f(j / 2^level)` for `level <= depth`.
    pub fn vertex(&self, level: usize, j: usize) -> &Vector {
        &self.vertices[j << (self.depth - level)]
    }

    /// Level at which `vertices[j]` first appears.
    pub fn level_introduced(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.depth - (j.trailing_zeros() as usize).min(self.depth)
    }

    /// Dyadic parameter `j / 2^depth`.
    pub fn param(&self, j: usize) -> f64 {
        j as f64 / (1u64 << self.depth) as f64
    }

    pub fn x0(&self) -> &Vector {
        &self.vertices[0]
    }

    pub fn x1(&self) -> &Vector {
        self.vertices.last().expect("curve has two vertices")
    }
}

/// Sum of segment norms at the curve's depth.
pub fn polyline_length(curve: &DyadicCurve) -> f64 {
    segment_lengths(&curve.space, &curve.vertices).iter().sum()
}

fn segment_lengths(space: &SpaceModel, vertices: &[Vector]) -> Vec<f64> {
    vertices.windows(2).map(|w| space.dist(&w[0], &w[1])).collect()
}

pub fn build_curve(
    space: &SpaceModel,
    set: &ProximalSet,
    x0: &Vector,
    x1: &Vector,
    params: &BuildParams,
) -> Result<DyadicCurve, BuildError> {
    if params.max_depth > MAX_DEPTH_LIMIT {
        return Err(BuildError::DepthTooLarge(params.max_depth));
    }
    for (which, x) in [(0u8, x0), (1, x1)] {
        let distance = set.distance(space, x)?;
        if distance > params.slicer.membership_tol {
            return Err(BuildError::EndpointNotInSet { which, distance });
        }
    }
    let model = space.modulus();
    let reach = set.reach();
    let d = space.dist(x0, x1);
    let mut curve = DyadicCurve {
        depth: 0,
        vertices: vec![x0.clone(), x1.clone()],
        deltas: vec![d],
        lengths: vec![d],
        space: space.clone(),
        set: set.config().clone(),
        feasibility: None,
        truncation_bound: None,
        warnings: Vec::new(),
    };
    if d == 0.0 {
        curve.truncation_bound = Some(0.0);
        return Ok(curve);
    }

    let feasibility = check_feasibility(model, d, reach)?;
    if !feasibility.length_gate() {
        if params.enforce_gates {
            return Err(BuildError::Gate { d_over_r: feasibility.d_over_r, beta_l: feasibility.beta_l });
        }
        curve
            .warnings
            .push(BuildWarning::LengthGateOpen { d_over_r: feasibility.d_over_r, beta_l: feasibility.beta_l });
    }
    let mu = feasibility.mu;
    curve.feasibility = Some(feasibility);

    let delta_stop = params.delta_stop.unwrap_or(1e-9 * d);
    let threshold = bounds::omega_inv_eighth(model)?;
    for level in 1..=params.max_depth {
        if *curve.deltas.last().expect("nonempty") <= delta_stop {
            break;
        }
        let children: Vec<_> = curve
            .vertices
            .par_windows(2)
            .map(|w| slice_with_threshold(space, set, &w[0], &w[1], 0.5, &params.slicer, threshold, false))
            .collect();
        let mut next = Vec::with_capacity(2 * curve.vertices.len() - 1);
        for (index, child) in children.into_iter().enumerate() {
            match child {
                Ok(sp) => {
                    next.push(curve.vertices[index].clone());
                    curve.warnings.extend(sp.warnings.into_iter().map(|warning| BuildWarning::Slice {
                        level,
                        index,
                        warning,
                    }));
                    next.push(sp.point);
                }
                Err(source) => {
                    return Err(BuildError::Slice { level, index, source, partial: Box::new(curve) });
                }
            }
        }
        next.push(curve.vertices.last().expect("nonempty").clone());
        let segments = segment_lengths(space, &next);
        curve.deltas.push(segments.iter().copied().fold(0.0, f64::max));
        curve.lengths.push(segments.iter().sum());
        curve.vertices = next;
        curve.depth = level;
    }
    curve.truncation_bound = mu.filter(|m| *m < 2.0).and_then(|m| {
        let len = *curve.lengths.last().expect("nonempty");
        let dk = *curve.deltas.last().expect("nonempty");
        bounds::truncation_bound(model, m, len, dk, reach).ok()
    });
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn circle_case(theta: f64) -> (SpaceModel, ProximalSet, Vector, Vector) {
        let l2 = SpaceModel::euclidean(2);
        let set = ProximalSet::ball_complement(&l2, vec![0.0, 0.0], 1.0).unwrap();
        (l2, set, v(&[1.0, 0.0]), v(&[theta.cos(), theta.sin()]))
    }

    fn depth(k: usize) -> BuildParams {
        BuildParams { max_depth: k, ..BuildParams::default() }
    }

    #[test]
    fn feasibility_examples() {
        let h = ModulusModel::ExactHilbert;
        let f = check_feasibility(&h, 0.01, 1.0).unwrap();
        assert!((f.mu.unwrap() - 1.003_466_034_7).abs() < 1e-9);
        assert!(f.assumption1 && f.assumption2 && f.assumption3);
        let f = check_feasibility(&h, 0.1, 1.0).unwrap();
        assert!((f.mu.unwrap() - 1.662_254_93).abs() < 1e-7);
        assert!(f.assumption1 && f.assumption2 && !f.assumption3);
        assert!(check_feasibility(&h, 1e-6, 1.0).unwrap().mu.unwrap() < 1.001);
        // below β_L everything the length theorem needs holds
        let f = check_feasibility(&h, 0.11, 1.0).unwrap();
        assert!(f.length_gate() && f.assumption1 && f.assumption2);
    }

    #[test]
    fn circle_depth_12_reproduces_the_arc() {
        // angle 0.01 and chord exactly 0.01
        for theta in [0.01, 2.0 * 0.005f64.asin()] {
            let (l2, set, x0, x1) = circle_case(theta);
            let c = build_curve(&l2, &set, &x0, &x1, &depth(12)).unwrap();
            assert_eq!(c.depth, 12);
            assert_eq!(c.vertices.len(), 4097);
            let arc = 2.0 * (l2.dist(&x0, &x1) / 2.0).asin();
            assert!((polyline_length(&c) - arc).abs() < 1e-12, "{}", polyline_length(&c) - arc);
            assert!(c.truncation_bound.unwrap() >= arc - polyline_length(&c));
            assert!(c.warnings.is_empty());
        }
        let (l2, set, x0, x1) = circle_case(2.0 * 0.005f64.asin());
        let c = build_curve(&l2, &set, &x0, &x1, &depth(12)).unwrap();
        assert!((polyline_length(&c) - 0.010_000_041_667_135_42).abs() < 1e-12);
    }

    #[test]
    fn small_depths() {
        let (l2, set, x0, x1) = circle_case(2.0 * 0.005f64.asin());
        let c = build_curve(&l2, &set, &x0, &x1, &depth(0)).unwrap();
        assert_eq!(c.vertices, vec![x0.clone(), x1.clone()]);
        assert_eq!(polyline_length(&c), l2.dist(&x0, &x1));

        // chord sum 4 sin(θ/4) with θ = 2 arcsin(0.005)
        let c = build_curve(&l2, &set, &x0, &x1, &depth(1)).unwrap();
        let theta = 2.0 * 0.005f64.asin();
        assert!((polyline_length(&c) - 4.0 * (theta / 4.0).sin()).abs() < 1e-15);
        assert!((polyline_length(&c) - 0.010_000_031_250_341_8).abs() < 1e-15, "{}", polyline_length(&c));

        let c = build_curve(&l2, &set, &x0, &x0, &depth(5)).unwrap();
        assert_eq!(c.depth, 0);
        assert_eq!(polyline_length(&c), 0.0);
    }

    #[test]
    fn collinear_vertices_keep_the_chord_length() {
        let l3 = SpaceModel::lp(3.0, 2).unwrap();
        let set =
            ProximalSet::from_config(&SetConfig::HalfSpace { normal: vec![0.0, 1.0], offset: 0.0, reach: 1.0 }, &l3)
                .unwrap();
        let (x0, x1) = (v(&[-0.002, -0.001]), v(&[0.003, -0.002]));
        let c = build_curve(&l3, &set, &x0, &x1, &depth(6)).unwrap();
        assert!((polyline_length(&c) - l3.dist(&x0, &x1)).abs() < 1e-15);
    }

    #[test]
    fn invariants_on_lp_circle() {
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let set = ProximalSet::ball_complement(&l4, vec![0.0, 0.0], 1.0).unwrap();
        let x0 = set.boundary_point(&l4, 0.3).unwrap();
        let x1 = set.boundary_point(&l4, 0.31).unwrap();
        let coarse = build_curve(&l4, &set, &x0, &x1, &depth(7)).unwrap();
        let fine = build_curve(&l4, &set, &x0, &x1, &depth(8)).unwrap();
        for (j, v) in coarse.vertices.iter().enumerate() {
            assert_eq!(v, &fine.vertices[2 * j]);
        }
        let mu = fine.feasibility.as_ref().unwrap().mu.unwrap();
        let d0 = fine.deltas[0];
        for (i, &d) in fine.deltas.iter().enumerate() {
            assert!(d <= bounds::delta_decay_bound(mu, d0, i) * (1.0 + 1e-12));
            assert!(fine.lengths[i] <= (1u64 << i) as f64 * d * (1.0 + 1e-15));
        }
        for w in fine.lengths.windows(2) {
            assert!(w[1] >= w[0]);
        }
        for v in &fine.vertices {
            assert!(set.distance(&l4, v).unwrap() <= 1e-9);
        }
        assert_eq!(fine.vertex(8, 256), &x1);
        assert_eq!(fine.level_introduced(0), 0);
        assert_eq!(fine.level_introduced(128), 1);
        assert_eq!(fine.level_introduced(3), 8);
    }

    #[test]
    fn gates_and_errors() {
        let (l2, set, x0, x1) = circle_case(0.3);
        assert!(matches!(build_curve(&l2, &set, &x0, &x1, &depth(4)), Err(BuildError::Gate { .. })));
        let open = BuildParams { enforce_gates: false, ..depth(4) };
        let c = build_curve(&l2, &set, &x0, &x1, &open).unwrap();
        assert!(matches!(c.warnings[0], BuildWarning::LengthGateOpen { .. }));
        assert!(matches!(build_curve(&l2, &set, &x0, &x1, &depth(21)), Err(BuildError::DepthTooLarge(21))));
        assert!(matches!(
            build_curve(&l2, &set, &v(&[0.2, 0.0]), &x1, &depth(2)),
            Err(BuildError::EndpointNotInSet { which: 0, .. })
        ));
        let starved = BuildParams { slicer: SlicerParams { max_iter: 3, ..SlicerParams::default() }, ..depth(4) };
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let set = ProximalSet::ball_complement(&l4, vec![0.0, 0.0], 1.0).unwrap();
        let x0 = set.boundary_point(&l4, 0.3).unwrap();
        let x1 = set.boundary_point(&l4, 0.31).unwrap();
        match build_curve(&l4, &set, &x0, &x1, &starved) {
            Err(BuildError::Slice { level: 1, partial, .. }) => assert_eq!(partial.depth, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn delta_stop_truncates() {
        let (l2, set, x0, x1) = circle_case(0.01);
        let p = BuildParams { delta_stop: Some(0.01 / 8.0), ..depth(14) };
        let c = build_curve(&l2, &set, &x0, &x1, &p).unwrap();
        assert!(c.depth <= 4 && *c.deltas.last().unwrap() <= 0.01 / 8.0);
    }
}
