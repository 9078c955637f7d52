// SPDX-License-Identifier: Apache-2.0

//! Membership in `conv{x0, B_r(mid), x1}`.
//!
//! A point `z` lies in the hull iff
//! `min_{α,β>=0, α+β<=1} ‖z − αx0 − βx1 − γ mid‖ − γ r <= 0` with
//! `γ = 1 − α − β`. The objective is convex, so nested golden-section
//! search over `α` and then `β ∈ [0, 1 − α]` finds the minimum.

use crate::numeric::golden_section_min;
use crate::space::{SpaceModel, Vector};

const PARAM_TOL: f64 = 1e-10;
const MAX_ITER: usize = 100;

/// Minimizer of the hull objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullFit {
    /// Upper estimate of `min ‖z − αx0 − βx1 − γ mid‖ − γ r`; `<= 0` inside
    /// the hull. When `z` is already in the ball the search is skipped and
    /// this is `‖z − mid‖ − r`.
    pub excess: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn hull_objective(
    space: &SpaceModel,
    x0: &Vector,
    x1: &Vector,
    mid: &Vector,
    r: f64,
    z: &Vector,
    alpha: f64,
    beta: f64,
) -> f64 {
    let gamma = (1.0 - alpha - beta).max(0.0);
    let p = crate::space::lp_norm(
        &(0..z.dim()).map(|i| z[i] - alpha * x0[i] - beta * x1[i] - gamma * mid[i]).collect::<Vec<_>>(),
        space.p(),
    );
    p - gamma * r
}

pub fn hull_fit(space: &SpaceModel, x0: &Vector, x1: &Vector, mid: &Vector, r: f64, z: &Vector) -> HullFit {
    // inside the ball already
    let at_ball = space.dist(z, mid) - r;
    if at_ball <= 0.0 {
        return HullFit { excess: at_ball, alpha: 0.0, beta: 0.0 };
    }
    let inner = |alpha: f64| {
        golden_section_min(
            |beta| hull_objective(space, x0, x1, mid, r, z, alpha, beta),
            0.0,
            (1.0 - alpha).max(0.0),
            PARAM_TOL,
            MAX_ITER,
        )
    };
    let (alpha, excess) = golden_section_min(|a| inner(a).1, 0.0, 1.0, PARAM_TOL, MAX_ITER);
    let (beta, _) = inner(alpha);
    HullFit { excess: excess.min(at_ball), alpha, beta }
}

pub fn hull_membership(
    space: &SpaceModel,
    x0: &Vector,
    x1: &Vector,
    mid: &Vector,
    r: f64,
    z: &Vector,
    tol: f64,
) -> bool {
    hull_fit(space, x0, x1, mid, r, z).excess <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let l2 = SpaceModel::euclidean(2);
        let (x0, x1) = (v(&[0.0, 0.0]), v(&[1.0, 0.0]));
        let mid = v(&[0.5, 0.0]);
        assert!(hull_membership(&l2, &x0, &x1, &mid, 0.1, &x0, 1e-10));
        let edge = v(&[0.5, 0.1]);
        let fit = hull_fit(&l2, &x0, &x1, &mid, 0.1, &edge);
        assert!(fit.excess.abs() < 1e-12);
        let c = v(&[0.5, 0.5]);
        assert!(!hull_membership(&l2, &c, &c, &c, 0.1, &v(&[0.5, 0.7]), 1e-10));
        assert!(!hull_membership(&l2, &x0, &x1, &mid, 0.1, &v(&[0.5, 0.2]), 1e-10));
        // tangent cone from x0 through the ball
        assert!(hull_membership(&l2, &x0, &x1, &mid, 0.1, &v(&[0.25, 0.04]), 1e-10));
    }

    #[test]
    fn agrees_with_brute_force_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2.0, 1.5, 4.0] {
            let space = SpaceModel::lp(p, 2).unwrap();
            for _ in 0..20 {
                let mut pt = || v(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
                let (x0, x1, mid, z) = (pt(), pt(), pt(), pt());
                let r = rng.gen_range(0.0..0.3);
                let fit = hull_fit(&space, &x0, &x1, &mid, r, &z);
                let n = 200;
                let mut brute = f64::INFINITY;
                for i in 0..=n {
                    for j in 0..=(n - i) {
                        let (a, b) = (i as f64 / n as f64, j as f64 / n as f64);
                        brute = brute.min(hull_objective(&space, &x0, &x1, &mid, r, &z, a, b));
                    }
                }
                assert_eq!(fit.excess <= 1e-6, brute <= 1e-6, "p={p}: {} vs {brute}", fit.excess);
                if fit.excess > 0.0 {
                    assert!(fit.excess <= brute + 1e-6, "p={p}: {} vs {brute}", fit.excess);
                    assert!(brute - fit.excess < 2e-2, "grid resolution");
                }
            }
        }
    }
}
