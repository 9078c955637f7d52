// SPDX-License-Identifier: Apache-2.0

//! Sampling estimators for `ρ_X` and `ζ⁺_X` of an `ℓp^n` space.
//!
//! Both moduli are suprema over pairs of vectors. We restrict to 2D sections
//! spanned by coordinate-sparse directions, scan a grid of angles and refine
//! the best cells by golden-section search. Every value returned is attained
//! by an explicit pair of vectors, so it is a lower estimate of the true
//! supremum.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lp_norm, ModulusTable, SpaceError, SpaceModel, Vector};
use crate::numeric::golden_section_max;

const MAX_EXTRA_SECTIONS: usize = 8;
const REFINE_CANDIDATES: usize = 3;
const REFINE_ROUNDS: usize = 4;

struct Section {
    u: Vector,
    v: Vector,
}

impl Section {
    /// Unit vector of the section at angle `theta`.
    fn unit(&self, p: f64, theta: f64) -> Option<Vector> {
        let w = &(&self.u * theta.cos()) + &(&self.v * theta.sin());
        let n = lp_norm(w.coords(), p);
        (n > 0.0).then(|| w.scale(1.0 / n))
    }
}

fn sections(dim: usize, seed: u64) -> Vec<Section> {
    let mut out = vec![Section { u: Vector::unit(dim, 0), v: Vector::unit(dim, 1) }];
    if dim == 2 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..MAX_EXTRA_SECTIONS {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        if r % 2 == 0 {
            out.push(Section { u: Vector::unit(dim, i), v: Vector::unit(dim, j) });
        } else {
            // u mixes two axes, v is a third one
            let mut k = rng.gen_range(0..dim - 2);
            for &taken in [i.min(j), i.max(j)].iter() {
                if k >= taken {
                    k += 1;
                }
            }
            let a: f64 = rng.gen_range(0.0..PI);
            let u = &(&Vector::unit(dim, i) * a.cos()) + &(&Vector::unit(dim, j) * a.sin());
            out.push(Section { u, v: Vector::unit(dim, k) });
        }
    }
    out
}

fn split_budget(total: usize, n_sections: usize) -> Vec<usize> {
    if n_sections == 1 {
        return vec![total];
    }
    let first = total / 2;
    let rest = (total - first) / (n_sections - 1);
    std::iter::once(first).chain(std::iter::repeat_n(rest, n_sections - 1)).collect()
}

/// Lower estimate of `ρ_X(τ) = sup{(‖x+y‖ + ‖x−y‖)/2 − 1 : ‖x‖ = 1, ‖y‖ = τ}`.
///
/// `budget` is the approximate number of objective evaluations; `seed` picks
/// the random sections used when `n > 2`.
pub fn estimate_rho(space: &SpaceModel, tau: f64, budget: usize, seed: u64) -> Result<f64, SpaceError> {
    if budget == 0 {
        return Err(SpaceError::ZeroBudget);
    }
    if !(tau >= 0.0) {
        return Err(SpaceError::NegativeArgument { name: "tau", value: tau });
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let p = space.p();
    let secs = sections(space.dim(), seed);
    let budgets = split_budget(budget, secs.len());
    let mut best = 0.0f64;
    for (sec, b) in secs.iter().zip(budgets) {
        let objective = |theta: f64, phi: f64| -> f64 {
            let (Some(x), Some(y)) = (sec.unit(p, theta), sec.unit(p, phi)) else {
                return f64::NEG_INFINITY;
            };
            let y = y.scale(tau);
            0.5 * (lp_norm((&x + &y).coords(), p) + lp_norm((&x - &y).coords(), p)) - 1.0
        };
        best = best.max(maximize_2d(objective, b));
    }
    Ok(best)
}

/// Grid scan of `[0, π)²` followed by alternating golden-section refinement.
fn maximize_2d<F: Fn(f64, f64) -> f64>(f: F, budget: usize) -> f64 {
    let g = (((budget as f64) * 0.5).sqrt() as usize).max(4);
    let step = PI / g as f64;
    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            let (t, ph) = (i as f64 * step, j as f64 * step);
            cells.push((f(t, ph), t, ph));
        }
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = cells[0].0;

    let spent = g * g;
    let remaining = budget.saturating_sub(spent);
    let per_run = remaining / (REFINE_CANDIDATES * REFINE_ROUNDS * 2).max(1);
    if per_run < 8 {
        return best;
    }
    let iters = per_run.saturating_sub(4).min(80);
    for &(_, t0, p0) in cells.iter().take(REFINE_CANDIDATES) {
        let (mut t, mut ph) = (t0, p0);
        let mut half = step;
        for _ in 0..REFINE_ROUNDS {
            let (nt, _) = golden_section_max(|x| f(x, ph), t - half, t + half, 1e-13, iters);
            t = nt;
            let (np, v) = golden_section_max(|y| f(t, y), ph - half, ph + half, 1e-13, iters);
            ph = np;
            best = best.max(v);
            half *= 0.5;
        }
    }
    best
}

/// Lower estimate of `ζ⁺_X(ε) = sup{‖x + εy‖ : ‖x‖ = ‖y‖ = 1, y ⌐ x}`.
pub fn estimate_zeta_plus(space: &SpaceModel, eps: f64, budget: usize, seed: u64) -> Result<f64, SpaceError> {
    if budget == 0 {
        return Err(SpaceError::ZeroBudget);
    }
    if !(eps >= 0.0) {
        return Err(SpaceError::NegativeArgument { name: "eps", value: eps });
    }
    if eps == 0.0 {
        return Ok(1.0);
    }
    let p = space.p();
    let secs = sections(space.dim(), seed);
    let budgets = split_budget(budget, secs.len());
    let mut best = 1.0f64;
    for (sec, b) in secs.iter().zip(budgets) {
        let objective = |theta: f64| -> f64 {
            let Some(x) = sec.unit(p, theta) else {
                return f64::NEG_INFINITY;
            };
            let j = space.dual_unchecked(&x, 1.0);
            let (a, c) = (j.dot(&sec.u), j.dot(&sec.v));
            let y = &(&sec.u * c) - &(&sec.v * a);
            let ny = lp_norm(y.coords(), p);
            if ny == 0.0 {
                return f64::NEG_INFINITY;
            }
            let y = y.scale(eps / ny);
            lp_norm((&x + &y).coords(), p).max(lp_norm((&x - &y).coords(), p))
        };
        let g = (b / 2).max(8);
        let step = PI / g as f64;
        let mut cells: Vec<(f64, f64)> = (0..g).map(|i| (objective(i as f64 * step), i as f64 * step)).collect();
        cells.sort_by(|a, b| b.0.total_cmp(&a.0));
        best = best.max(cells[0].0);
        let iters = ((b - g) / REFINE_CANDIDATES).saturating_sub(4).clamp(0, 100);
        if iters >= 8 {
            for &(_, t) in cells.iter().take(REFINE_CANDIDATES) {
                let (_, v) = golden_section_max(objective, t - step, t + step, 1e-14, iters);
                best = best.max(v);
            }
        }
    }
    Ok(best)
}

/// Tabulates `ρ̂` on `taus` (which must start at 0 and increase), carrying
/// the default power profile of the space for extrapolation.
pub fn estimate_modulus_table(
    space: &SpaceModel,
    taus: &[f64],
    budget: usize,
    seed: u64,
) -> Result<ModulusTable, SpaceError> {
    let pt = super::PowerType::for_lp(space.p());
    let rho = taus.iter().map(|&t| estimate_rho(space, t, budget, seed)).collect::<Result<Vec<_>, _>>()?;
    Ok(ModulusTable { s: pt.s, c_sm: pt.c_sm, tau: taus.to_vec(), rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::modulus::hilbert_rho;

    #[test]
    fn hilbert_rho_recovered() {
        let l2 = SpaceModel::euclidean(2);
        let est = estimate_rho(&l2, 1.0, 10_000, 1).unwrap();
        assert!((est - (2f64.sqrt() - 1.0)).abs() < 1e-4, "{est}");
        assert_eq!(estimate_rho(&l2, 0.0, 10_000, 1).unwrap(), 0.0);
        assert_eq!(estimate_rho(&l2, 1.0, 0, 1), Err(SpaceError::ZeroBudget));
    }

    #[test]
    fn l4_rho_in_day_nordlander_bracket() {
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let est = estimate_rho(&l4, 0.5, 10_000, 7).unwrap();
        assert!(est >= 1.25f64.sqrt() - 1.0 && est <= 0.5, "{est}");
    }

    #[test]
    fn l4_zeta_in_sandwich() {
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let eps = 0.2;
        let z = estimate_zeta_plus(&l4, eps, 4_000, 3).unwrap();
        let lo = 1.0 + estimate_rho(&l4, eps / (2.0 * (1.0 + eps)), 10_000, 3).unwrap();
        let hi = 1.0 + estimate_rho(&l4, 2.0 * eps, 10_000, 3).unwrap();
        assert!(lo <= z + 1e-9 && z <= hi + 1e-9, "{lo} {z} {hi}");
    }

    #[test]
    fn hilbert_zeta_recovered_in_higher_dim() {
        let l2 = SpaceModel::euclidean(4);
        let z = estimate_zeta_plus(&l2, 0.3, 4_000, 11).unwrap();
        assert!((z - (1.0 + 0.09f64).sqrt()).abs() < 1e-9, "{z}");
        let r = estimate_rho(&l2, 0.5, 20_000, 11).unwrap();
        assert!((r - hilbert_rho(0.5)).abs() < 1e-4);
    }

    #[test]
    fn tables_are_valid_models() {
        let l4 = SpaceModel::lp(4.0, 2).unwrap();
        let taus: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let t = estimate_modulus_table(&l4, &taus, 4_000, 5).unwrap();
        t.validate(1e-6).unwrap();
    }
}
