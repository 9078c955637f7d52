// SPDX-License-Identifier: Apache-2.0

//! Slice-projection of a chord point onto a proximally smooth set.
//!
//! Along the chord `x_λ = (1−λ)x0 + λx1` the signed defect of `P_A(x_λ)`
//! against the hyperplane `H_{x1−x0} + x_{λ*}` changes sign, and bisection
//! in `λ` finds a root.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{omega_inv_eighth, r_prime, BoundsError};
use crate::sets::{ProximalSet, SetError};
use crate::space::{SpaceError, SpaceModel, Vector};

/// Residuals are never required below this many ulps of the coordinate scale.
const RESIDUAL_FLOOR_ULPS: f64 = 8.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SliceError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("coincident endpoints")]
    CoincidentEndpoints,
    #[error("endpoint x{which} is at distance {distance} from the set")]
    EndpointNotInSet { which: u8, distance: f64 },
    #[error("chord position {0} outside [0, 1]")]
    LambdaRange(f64),
    #[error("residual tolerance not reached after {iterations} iterations (best |residual| = {})", .best.residual.abs())]
    ToleranceNotReached { best: Box<SlicePoint>, iterations: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SlicerParams {
    /// Relative to `‖x0 − x1‖`.
    pub residual_tol: f64,
    pub max_iter: usize,
    pub membership_tol: f64,
}

impl Default for SlicerParams {
    fn default() -> Self {
        Self { residual_tol: 1e-10, max_iter: 200, membership_tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SliceWarning {
    /// Adjacent bisection iterates differ by more than `d/2`.
    ResidualJump { lambda: f64, jump: f64 },
    /// `d/R >= ω⁻¹(1/8)`; the waist bound does not apply.
    OutsideWaistRange { d_over_r: f64, threshold: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlicePoint {
    pub lambda: f64,
    pub point: Vector,
    pub residual: f64,
    pub dist_to_mid: f64,
    pub iterations: usize,
    pub warnings: Vec<SliceWarning>,
}

/// `⟨J(x1 − x0), a − (x0 + x1)/2⟩`.
pub fn mid_residual(space: &SpaceModel, x0: &Vector, x1: &Vector, a: &Vector) -> Result<f64, SliceError> {
    chord_residual(space, x0, x1, 0.5, a)
}

/// `⟨J(x1 − x0), a − x_λ⟩`.
pub fn chord_residual(
    space: &SpaceModel,
    x0: &Vector,
    x1: &Vector,
    lambda: f64,
    a: &Vector,
) -> Result<f64, SliceError> {
    let chord = x1 - x0;
    let d = space.norm(&chord)?;
    space.norm(a)?;
    if d == 0.0 {
        return Err(SliceError::CoincidentEndpoints);
    }
    let j = space.dual_unchecked(&chord, d);
    Ok(j.dot(&(&(a - x0) - &(&chord * lambda))))
}

/// Slice-projection of the midpoint of `[x0, x1]`.
pub fn slice_project(
    space: &SpaceModel,
    set: &ProximalSet,
    x0: &Vector,
    x1: &Vector,
    params: &SlicerParams,
) -> Result<SlicePoint, SliceError> {
    slice_project_at(space, set, x0, x1, 0.5, params)
}

/// Point of `P_A([x0, x1])` on the hyperplane through `x_λ` parallel to
/// `H_{x1−x0}`.
pub fn slice_project_at(
    space: &SpaceModel,
    set: &ProximalSet,
    x0: &Vector,
    x1: &Vector,
    lambda: f64,
    params: &SlicerParams,
) -> Result<SlicePoint, SliceError> {
    let threshold = omega_inv_eighth(space.modulus())?;
    slice_with_threshold(space, set, x0, x1, lambda, params, threshold, true)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn slice_with_threshold(
    space: &SpaceModel,
    set: &ProximalSet,
    x0: &Vector,
    x1: &Vector,
    lambda: f64,
    params: &SlicerParams,
    waist_threshold: f64,
    check_endpoints: bool,
) -> Result<SlicePoint, SliceError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(SliceError::LambdaRange(lambda));
    }
    let chord = x1 - x0;
    let d = space.norm(&chord)?;
    space.norm(x0)?;
    if d == 0.0 {
        return Err(SliceError::CoincidentEndpoints);
    }
    if check_endpoints {
        for (which, x) in [(0u8, x0), (1, x1)] {
            let distance = set.distance(space, x)?;
            if distance > params.membership_tol {
                return Err(SliceError::EndpointNotInSet { which, distance });
            }
        }
    }
    let mut warnings = Vec::new();
    let d_over_r = d / set.reach();
    if d_over_r >= waist_threshold {
        warnings.push(SliceWarning::OutsideWaistRange { d_over_r, threshold: waist_threshold });
    }

    let j = space.dual_unchecked(&chord, d);
    let target = x0.lerp(x1, lambda);
    let scale = x0.coords().iter().chain(x1.coords()).fold(0.0f64, |m, c| m.max(c.abs()));
    let tol = (params.residual_tol * d).max(RESIDUAL_FLOOR_ULPS * f64::EPSILON * scale);

    let evaluate = |t: f64| -> Result<(Vector, f64), SliceError> {
        let p = set.project(space, &x0.lerp(x1, t))?;
        let residual = j.dot(&(&(&p - x0) - &(&chord * lambda)));
        Ok((p, residual))
    };
    let finish = |t: f64, p: Vector, residual: f64, iterations: usize, warnings: Vec<SliceWarning>| SlicePoint {
        lambda: t,
        dist_to_mid: space.dist(&p, &target),
        point: p,
        residual,
        iterations,
        warnings,
    };

    // at the endpoints the residual is −λd and (1−λ)d
    if lambda == 0.0 || lambda == 1.0 {
        let (p, r) = evaluate(lambda)?;
        return Ok(finish(lambda, p, r, 0, warnings));
    }

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut prev: Option<f64> = None;
    let mut jump_flagged = false;
    let mut best: Option<(f64, Vector, f64)> = None;
    for it in 1..=params.max_iter {
        let mid = 0.5 * (lo + hi);
        let (p, r) = evaluate(mid)?;
        if let Some(pr) = prev {
            let jump = (r - pr).abs();
            if jump > 0.5 * d && !jump_flagged {
                warnings.push(SliceWarning::ResidualJump { lambda: mid, jump });
                jump_flagged = true;
            }
        }
        prev = Some(r);
        if r.abs() <= tol {
            return Ok(finish(mid, p, r, it, warnings));
        }
        if best.as_ref().is_none_or(|b| r.abs() < b.2.abs()) {
            best = Some((mid, p, r));
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let (t, p, r) = best.expect("at least one bisection step");
    let iterations = params.max_iter;
    Err(SliceError::ToleranceNotReached { best: Box::new(finish(t, p, r, iterations, warnings)), iterations })
}

/// Outcome of [`waist_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WaistCheck {
    /// `margin = R′(d, R) − ‖slice − mid‖`.
    Applied { bound: f64, margin: f64 },
    /// `d/R >= ω⁻¹(1/8)`.
    Skipped { d_over_r: f64, threshold: f64 },
}

/// Compares the slice point's distance from the chord point against
/// `4λ(1−λ) R′(d, R)` (equal to `R′` at the midpoint).
pub fn waist_check(
    space: &SpaceModel,
    slice: &SlicePoint,
    x0: &Vector,
    x1: &Vector,
    lambda: f64,
    reach: f64,
) -> Result<WaistCheck, SliceError> {
    let model = space.modulus();
    let threshold = omega_inv_eighth(model)?;
    let d = space.norm(&(x1 - x0))?;
    let d_over_r = d / reach;
    if !(d_over_r < threshold) {
        return Ok(WaistCheck::Skipped { d_over_r, threshold });
    }
    let bound = 4.0 * lambda * (1.0 - lambda) * r_prime(model, d, reach)?;
    let deviation = space.dist(&slice.point, &x0.lerp(x1, lambda));
    Ok(WaistCheck::Applied { bound, margin: bound - deviation })
}
