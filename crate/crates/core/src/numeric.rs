// SPDX-License-Identifier: Apache-2.0

//! Scalar root finding and line minimization shared by the other modules.

use thiserror::Error;

/// Relative tolerance used for every inverse of a monotone function.
pub const INVERSE_REL_TOL: f64 = 1e-10;
/// Iteration cap for bisection.
pub const MAX_BISECTION_ITER: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("target {target} is not attained on [{lo}, {hi}]")]
    NotBracketed { target: f64, lo: f64, hi: f64 },
    #[error("function returned a non-finite value at {at}")]
    NonFinite { at: f64 },
}

/// Solves `f(x) = target` for an increasing `f` on `[lo, hi]` by bisection.
///
/// Stops once the bracket is narrower than `rel_tol * |x|` (or `rel_tol`
/// near zero) or after `max_iter` halvings.
pub fn bisect_increasing<F>(
    f: F,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64, NumericError>
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo) - target;
    let f_hi = f(hi) - target;
    if f_lo.is_nan() {
        return Err(NumericError::NonFinite { at: lo });
    }
    if f_hi.is_nan() {
        return Err(NumericError::NonFinite { at: hi });
    }
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(NumericError::NotBracketed { target, lo, hi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        let v = f(mid) - target;
        if v.is_nan() {
            return Err(NumericError::NonFinite { at: mid });
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inverts an increasing `f` with `f(0) <= target` on `[0, cap]`.
///
/// The upper end of the bracket grows geometrically from 1 until it reaches
/// `target` or exceeds `cap`.
pub fn invert_increasing<F>(f: F, target: f64, cap: f64) -> Result<f64, NumericError>
where
    F: Fn(f64) -> f64,
{
    let mut hi = 1.0;
    loop {
        let v = f(hi);
        if v.is_nan() {
            return Err(NumericError::NonFinite { at: hi });
        }
        if v >= target {
            break;
        }
        if hi >= cap {
            return Err(NumericError::NotBracketed { target, lo: 0.0, hi });
        }
        hi = (hi * 2.0).min(cap);
    }
    bisect_increasing(f, target, 0.0, hi, INVERSE_REL_TOL, MAX_BISECTION_ITER)
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmin, min)`. Evaluations stop once the bracket is shorter than
/// `tol` or after `max_iter` steps.
pub fn golden_section_min<F>(f: F, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let (mut x, mut fx) = if fc <= fd { (c, fc) } else { (d, fd) };
    for end in [a, b] {
        let fe = f(end);
        if fe < fx {
            x = end;
            fx = fe;
        }
    }
    (x, fx)
}

/// Golden-section search for a maximum; see [`golden_section_min`].
pub fn golden_section_max<F>(f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (x, v) = golden_section_min(|t| -f(t), a, b, tol, max_iter);
    (x, -v)
}
