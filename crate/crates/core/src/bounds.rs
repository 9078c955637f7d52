// SPDX-License-Identifier: Apache-2.0

//! Explicit constants and inequalities attached to the dyadic curve.
//!
//! `R′` and `μ` are evaluated with whatever `ρ` the modulus model supplies.
//! The length and inclusion constants are only stated for power-type
//! moduli, so they take a [`PowerType`] explicitly; for the Hilbert model
//! that is `(s, C_sm) = (2, 1/2)`.

use serde::Serialize;
use thiserror::Error;

use crate::numeric::{bisect_increasing, INVERSE_REL_TOL, MAX_BISECTION_ITER};
pub use crate::space::PowerType;
use crate::space::{ModulusModel, SpaceError};

/// Series terms below this are dropped.
pub const SERIES_CUTOFF: f64 = 1e-16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("lambda = {0} outside [0, 1]")]
    LambdaRange(f64),
    #[error("tau/R = {ratio} outside the domain of R' (8 omega(tau/R) = {eight_omega} >= 1)")]
    OutsideRPrimeDomain { ratio: f64, eight_omega: f64 },
    #[error("{what}: d/R = {ratio} is not below the threshold {threshold}")]
    Gate { what: &'static str, ratio: f64, threshold: f64 },
    #[error("{what}: denominator {value} is not positive")]
    Degenerate { what: &'static str, value: f64 },
    #[error("beta_I bisection failed: {0}")]
    Bisection(String),
}

fn positive(what: &'static str, value: f64) -> Result<f64, BoundsError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(BoundsError::NonPositive { what, value })
    }
}

fn check_lambda(lambda: f64) -> Result<f64, BoundsError> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(lambda)
    } else {
        Err(BoundsError::LambdaRange(lambda))
    }
}

/// `8 ω(τ/R)` and `R′/τ = 8ω/(1 − 8ω)`.
fn r_prime_ratio(model: &ModulusModel, tau: f64, r: f64) -> Result<f64, BoundsError> {
    let ratio = tau / r;
    let eight_omega = 8.0 * model.omega(ratio)?;
    if eight_omega >= 1.0 {
        return Err(BoundsError::OutsideRPrimeDomain { ratio, eight_omega });
    }
    Ok(eight_omega / (1.0 - eight_omega))
}

/// `R′(τ, R) = τ · 8ω(τ/R) / (1 − 8ω(τ/R))`.
pub fn r_prime(model: &ModulusModel, tau: f64, r: f64) -> Result<f64, BoundsError> {
    let tau = positive("tau", tau)?;
    let r = positive("R", r)?;
    Ok(tau * r_prime_ratio(model, tau, r)?)
}

/// `μ = ζ⁺(2R′(d, R)/d)`.
pub fn mu(model: &ModulusModel, d: f64, r: f64) -> Result<f64, BoundsError> {
    Ok(1.0 + psi(model, d, r)?)
}

/// `ψ(τ) = ζ⁺(2R′(τ, R)/τ) − 1`, the per-level relative length growth.
pub fn psi(model: &ModulusModel, tau: f64, r: f64) -> Result<f64, BoundsError> {
    let tau = positive("d", tau)?;
    let r = positive("R", r)?;
    let ratio = r_prime_ratio(model, tau, r)?;
    Ok(model.zeta_plus_minus_one(2.0 * ratio)?)
}

/// `ω⁻¹(1/8)`, the upper end of the domain of `R′`.
pub fn omega_inv_eighth(model: &ModulusModel) -> Result<f64, BoundsError> {
    Ok(model.omega_inv(0.125)?)
}

/// `β_L = ω⁻¹( z / (8(2 + z)) )` with `z = (ζ⁺)⁻¹(2)`.
pub fn beta_l(model: &ModulusModel) -> Result<f64, BoundsError> {
    let z = model.zeta_plus_inv(2.0)?;
    Ok(model.omega_inv(z / (8.0 * (2.0 + z)))?)
}

/// Largest `β` with `μ(β R, R)^s / 2^{s−1} < 1`.
pub fn beta_i(model: &ModulusModel, s: f64) -> Result<f64, BoundsError> {
    if !(s > 1.0 && s <= 2.0) {
        return Err(BoundsError::Space(SpaceError::InvalidModulus(format!("s = {s} outside (1, 2]"))));
    }
    let hi = omega_inv_eighth(model)?;
    let f = |beta: f64| {
        if beta <= 0.0 {
            return 2f64.powf(1.0 - s);
        }
        match mu(model, beta, 1.0) {
            Ok(m) => m.powf(s) / 2f64.powf(s - 1.0),
            Err(_) => f64::INFINITY,
        }
    };
    bisect_increasing(f, 1.0, 0.0, hi, INVERSE_REL_TOL, MAX_BISECTION_ITER)
        .map_err(|e| BoundsError::Bisection(e.to_string()))
}

/// `q = 1 − μ^s / 2^{s−1}`, the common denominator of the inclusion bounds.
pub fn inclusion_denominator(pt: PowerType, mu_val: f64) -> f64 {
    1.0 - mu_val.powf(pt.s) / 2f64.powf(pt.s - 1.0)
}

fn positive_denominator(pt: PowerType, mu_val: f64, what: &'static str) -> Result<f64, BoundsError> {
    let q = inclusion_denominator(pt, mu_val);
    if q > 0.0 {
        Ok(q)
    } else {
        Err(BoundsError::Degenerate { what, value: q })
    }
}

/// `8 R λ(1−λ) ρ(d/R)`: bound on `dist(x_λ, A)` for `x_λ` on the chord.
pub fn midpoint_dist_bound(model: &ModulusModel, d: f64, r: f64, lambda: f64) -> Result<f64, BoundsError> {
    let r = positive("R", r)?;
    let lambda = check_lambda(lambda)?;
    if !(d >= 0.0 && d / r < 2.0) {
        return Err(BoundsError::Gate { what: "midpoint_dist_bound", ratio: d / r, threshold: 2.0 });
    }
    Ok(8.0 * r * lambda * (1.0 - lambda) * model.rho(d / r)?)
}

/// `4 λ(1−λ) R′(d, R)`.
pub fn waist_bound(model: &ModulusModel, d: f64, r: f64, lambda: f64) -> Result<f64, BoundsError> {
    let lambda = check_lambda(lambda)?;
    Ok(4.0 * lambda * (1.0 - lambda) * r_prime(model, d, r)?)
}

/// Exponent `(16/5)^s C^{s+1} (d/2R)^{s(s−1)} / (1 − (μ/2)^{s(s−1)})`.
fn length_exponent(pt: PowerType, mu_val: f64, d: f64, r: f64) -> Result<f64, BoundsError> {
    let e = pt.s * (pt.s - 1.0);
    let denom = 1.0 - (mu_val / 2.0).powf(e);
    if !(denom > 0.0) {
        return Err(BoundsError::Degenerate { what: "length exponent", value: denom });
    }
    Ok((16.0f64 / 5.0).powf(pt.s) * pt.c_sm.powf(pt.s + 1.0) * (d / (2.0 * r)).powf(e) / denom)
}

fn gate(what: &'static str, d: f64, r: f64, threshold: f64) -> Result<(), BoundsError> {
    if d / r < threshold {
        Ok(())
    } else {
        Err(BoundsError::Gate { what, ratio: d / r, threshold })
    }
}

/// Upper bound on the length of the limit curve for `d/R < β_L`.
pub fn length_bound(model: &ModulusModel, pt: PowerType, d: f64, r: f64) -> Result<f64, BoundsError> {
    let d = positive("d", d)?;
    let r = positive("R", r)?;
    gate("length_bound", d, r, beta_l(model)?)?;
    let m = mu(model, d, r)?;
    Ok(d * length_exponent(pt, m, d, r)?.exp())
}

/// Radius `r` with the curve inside `conv{x0, B_r(mid), x1}`, for `d/R < β_I`.
pub fn inclusion_radius(model: &ModulusModel, pt: PowerType, d: f64, r: f64) -> Result<f64, BoundsError> {
    let d = positive("d", d)?;
    let r = positive("R", r)?;
    gate("inclusion_radius", d, r, beta_i(model, pt.s)?)?;
    let q = positive_denominator(pt, mu(model, d, r)?, "inclusion_radius")?;
    Ok((400.0 * pt.c_sm / (q * q)) * d * (d / r).powf(pt.s - 1.0))
}

/// `(μ/2)^i Δ0`.
pub fn delta_decay_bound(mu_val: f64, delta0: f64, i: usize) -> f64 {
    (mu_val / 2.0).powi(i as i32) * delta0
}

/// `48 C_sm / q · (Δ0/R)^{s−1} · Δ0`: bound on the deviation `g₁` from the chord.
pub fn cylinder_bound(pt: PowerType, mu_val: f64, delta0: f64, r: f64) -> Result<f64, BoundsError> {
    let r = positive("R", r)?;
    let q = positive_denominator(pt, mu_val, "cylinder_bound")?;
    Ok(48.0 * pt.c_sm / q * (delta0 / r).powf(pt.s - 1.0) * delta0)
}

/// `Δ0/4`: lower bound on the chord coordinate `g₂(t)` for `t ∈ [1/2, 1]`.
pub fn g2_floor(delta0: f64) -> f64 {
    delta0 / 4.0
}

/// `24 C_sm / q · (Δ0/R)^{s−1} · Δ0 / 2^k`.
pub fn claim_sum_bound(pt: PowerType, mu_val: f64, delta0: f64, r: f64, k: usize) -> Result<f64, BoundsError> {
    let r = positive("R", r)?;
    let q = positive_denominator(pt, mu_val, "claim_sum_bound")?;
    Ok(24.0 * pt.c_sm / q * (delta0 / r).powf(pt.s - 1.0) * delta0 / 2f64.powi(k as i32))
}

/// `Σ_{j=0}^{k} R′(Δ_j, R) / 2^{k−j}` with `Δ_j = (μ/2)^j Δ0`.
pub fn claim_sum_lhs(model: &ModulusModel, mu_val: f64, delta0: f64, r: f64, k: usize) -> Result<f64, BoundsError> {
    let mut total = 0.0;
    for j in 0..=k {
        let dj = delta_decay_bound(mu_val, delta0, j);
        if dj == 0.0 {
            break;
        }
        total += r_prime(model, dj, r)? / 2f64.powi((k - j) as i32);
    }
    Ok(total)
}

/// `exp[(16/5)^s C_sm^{s+1} (Δ0/2R)^{s(s−1)} / (1 − (μ/2)^{s(s−1)})]`.
pub fn claim_bounder_rhs(
    model: &ModulusModel,
    pt: PowerType,
    mu_val: f64,
    delta0: f64,
    r: f64,
) -> Result<f64, BoundsError> {
    let delta0 = positive("delta0", delta0)?;
    let r = positive("R", r)?;
    gate("claim_bounder_rhs", delta0, r, beta_l(model)?)?;
    Ok(length_exponent(pt, mu_val, delta0, r)?.exp())
}

/// `exp[80^s C_sm^{s+1} (Δ0/R)^{s(s−1)} / (1 − (μ/2)^{s(s−1)})]`.
///
/// Same shape as [`claim_bounder_rhs`] with the constant obtained from
/// `ψ(τ) <= ρ(16 R′(τ)/τ)`, `R′(τ)/τ <= 8 C (τ/R)^{s−1} / (1 − 8ω)` and
/// `8ω <= 3/5` below `β_L`. This one dominates the series.
pub fn claim_bounder_rhs_rederived(pt: PowerType, mu_val: f64, delta0: f64, r: f64) -> Result<f64, BoundsError> {
    let r = positive("R", r)?;
    let e = pt.s * (pt.s - 1.0);
    let denom = 1.0 - (mu_val / 2.0).powf(e);
    if !(denom > 0.0) {
        return Err(BoundsError::Degenerate { what: "rederived bounder", value: denom });
    }
    Ok((80f64.powf(pt.s) * pt.c_sm.powf(pt.s + 1.0) * (delta0 / r).powf(e) / denom).exp())
}

/// `exp[Σ_{i>=0} ψ((μ/2)^i Δ0)]`, truncated once terms drop below
/// [`SERIES_CUTOFF`].
pub fn bounder_series(model: &ModulusModel, mu_val: f64, delta0: f64, r: f64) -> Result<f64, BoundsError> {
    let ratio = mu_val / 2.0;
    if !(ratio < 1.0) {
        return Err(BoundsError::Degenerate { what: "bounder series ratio", value: 1.0 - ratio });
    }
    let mut sum = 0.0;
    let mut tau = positive("delta0", delta0)?;
    for _ in 0..10_000 {
        let term = psi(model, tau, r)?;
        sum += term;
        if term < SERIES_CUTOFF {
            break;
        }
        tau *= ratio;
        if tau == 0.0 {
            break;
        }
    }
    Ok(sum.exp())
}

/// Bound on `ℓ(limit) − ℓ(γ_k)` given the level-`k` polyline length and
/// maximal segment `Δ_k`: `ℓ(γ_k) (exp[Σ_{i>=0} ψ((μ/2)^i Δ_k)] − 1)`.
pub fn truncation_bound(
    model: &ModulusModel,
    mu_val: f64,
    polyline_length: f64,
    delta_k: f64,
    r: f64,
) -> Result<f64, BoundsError> {
    if delta_k == 0.0 {
        return Ok(0.0);
    }
    Ok(polyline_length * (bounder_series(model, mu_val, delta_k, r)? - 1.0))
}

/// Every scalar attached to a pair `(d, R)`, with `None` where a formula's
/// domain or gate is not met.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsContext {
    pub modulus_kind: &'static str,
    pub s: f64,
    pub c_sm: f64,
    pub d: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub d_over_r: f64,
    pub omega_inv_eighth: f64,
    pub beta_l: f64,
    pub beta_i: f64,
    pub r_prime: Option<f64>,
    pub mu: Option<f64>,
    pub length_bound: Option<f64>,
    pub inclusion_radius: Option<f64>,
    pub cylinder_bound: Option<f64>,
    pub g2_floor: f64,
    pub midpoint_dist_bound: Option<f64>,
    pub waist_bound: Option<f64>,
    pub claim_bounder_rhs: Option<f64>,
    pub claim_bounder_rhs_rederived: Option<f64>,
    pub bounder_series: Option<f64>,
}

impl BoundsContext {
    /// Evaluates everything for the model's own power type.
    pub fn new(model: &ModulusModel, d: f64, r: f64) -> Result<Self, BoundsError> {
        Self::with_power_type(model, model.power_type(), d, r)
    }

    pub fn with_power_type(model: &ModulusModel, pt: PowerType, d: f64, r: f64) -> Result<Self, BoundsError> {
        let d = positive("d", d)?;
        let r = positive("R", r)?;
        let beta_l = beta_l(model)?;
        let beta_i = beta_i(model, pt.s)?;
        let mu = mu(model, d, r).ok();
        let d_over_r = d / r;
        Ok(Self {
            modulus_kind: model.kind_name(),
            s: pt.s,
            c_sm: pt.c_sm,
            d,
            r,
            d_over_r,
            omega_inv_eighth: omega_inv_eighth(model)?,
            beta_l,
            beta_i,
            r_prime: r_prime(model, d, r).ok(),
            mu,
            length_bound: length_bound(model, pt, d, r).ok(),
            inclusion_radius: inclusion_radius(model, pt, d, r).ok(),
            cylinder_bound: mu.and_then(|m| cylinder_bound(pt, m, d, r).ok()),
            g2_floor: g2_floor(d),
            midpoint_dist_bound: midpoint_dist_bound(model, d, r, 0.5).ok(),
            waist_bound: waist_bound(model, d, r, 0.5).ok(),
            claim_bounder_rhs: mu.and_then(|m| claim_bounder_rhs(model, pt, m, d, r).ok()),
            claim_bounder_rhs_rederived: mu.and_then(|m| claim_bounder_rhs_rederived(pt, m, d, r).ok()),
            bounder_series: mu.and_then(|m| bounder_series(model, m, d, r).ok()),
        })
    }

    pub fn assumption1(&self) -> bool {
        self.d_over_r < self.omega_inv_eighth
    }

    pub fn assumption2(&self) -> bool {
        self.mu.is_some_and(|m| m < 2.0)
    }

    pub fn assumption3(&self) -> bool {
        self.mu.is_some_and(|m| m.powf(self.s) / 2f64.powf(self.s - 1.0) < 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: ModulusModel = ModulusModel::ExactHilbert;
    const HP: PowerType = PowerType { s: 2.0, c_sm: 0.5 };

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    // Reference values below were evaluated in 50-digit arithmetic.

    #[test]
    fn r_prime_examples() {
        assert!(close(r_prime(&H, 0.1, 1.0).unwrap(), 0.066_390_73, 1e-6));
        assert!(close(r_prime(&H, 0.01, 1.0).unwrap(), 4.166_558_17e-4, 1e-8));
        assert!(r_prime(&H, 1e-8, 1.0).unwrap() / 1e-8 < 1e-7);
        assert!(matches!(r_prime(&H, 0.3, 1.0), Err(BoundsError::OutsideRPrimeDomain { .. })));
    }

    #[test]
    fn mu_examples() {
        assert!(close(mu(&H, 0.01, 1.0).unwrap(), 1.003_466_034_7, 1e-10));
        assert!(close(mu(&H, 0.1, 1.0).unwrap(), 1.662_254_93, 1e-8));
        let small = mu(&H, 1e-6, 1.0).unwrap();
        assert!((1.0..1.001).contains(&small));
    }

    #[test]
    fn beta_examples() {
        let bl = beta_l(&H).unwrap();
        assert!(close(bl, 0.116_417_202_8, 1e-9), "{bl}");
        assert!(bl <= omega_inv_eighth(&H).unwrap());
        assert!(close(omega_inv_eighth(&H).unwrap(), 16.0 / 63.0, 1e-10));
        let bi = beta_i(&H, 2.0).unwrap();
        assert!(close(bi, 48.0 / 575.0, 1e-9), "{bi}");
        assert!(bi < bl);
        let p = ModulusModel::power(2.0, 0.5).unwrap();
        // closed form for the power profile: ω⁻¹(c) = 2c, (ζ⁺)⁻¹(2) = 1/√2
        let z = 0.5f64.sqrt();
        assert!((beta_l(&p).unwrap() - 2.0 * z / (8.0 * (2.0 + z))).abs() < 1e-6);
        let near_one = ModulusModel::power(1.001, 0.5).unwrap();
        assert!(beta_i(&near_one, 1.001).unwrap() < 1e-3);
    }

    #[test]
    fn bound_examples() {
        let lb = length_bound(&H, HP, 0.01, 1.0).unwrap();
        assert!(close(lb, 0.010_000_427_665_71, 1e-11), "{lb}");
        assert!(close(length_bound(&H, HP, 0.1, 1.0).unwrap(), 0.101_040_21, 1e-7));
        assert!(length_bound(&H, HP, 1e-7, 1.0).unwrap() / 1e-7 - 1.0 < 1e-12);
        assert!(matches!(length_bound(&H, HP, 0.2, 1.0), Err(BoundsError::Gate { .. })));

        let ir = inclusion_radius(&H, HP, 0.01, 1.0).unwrap();
        assert!(close(ir, 0.081_122_734_2, 1e-8), "{ir}");
        assert!(matches!(inclusion_radius(&H, HP, 0.1, 1.0), Err(BoundsError::Gate { .. })));
        let near = inclusion_radius(&H, HP, 0.0834, 1.0).unwrap();
        assert!(near > 1e3 * ir);
        let half = inclusion_radius(&H, HP, 0.005, 1.0).unwrap();
        assert!((ir / half / 4.0 - 1.0).abs() < 0.02);

        let mid = midpoint_dist_bound(&H, 0.01, 1.0, 0.5).unwrap();
        assert!(close(mid, 9.999_75e-5, 1e-6));
        assert_eq!(midpoint_dist_bound(&H, 0.01, 1.0, 0.0).unwrap(), 0.0);
        let sagitta = 1.0 - (1.0f64 - 2.5e-5).sqrt();
        assert!(sagitta <= mid);

        let rp = r_prime(&H, 0.01, 1.0).unwrap();
        assert_eq!(waist_bound(&H, 0.01, 1.0, 0.5).unwrap(), rp);
        assert_eq!(waist_bound(&H, 0.01, 1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn decay_and_cylinder_examples() {
        let m = mu(&H, 0.01, 1.0).unwrap();
        assert_eq!(delta_decay_bound(m, 0.01, 0), 0.01);
        assert!(close(delta_decay_bound(m, 1.0, 5), 0.031_795_3, 1e-5));
        assert_eq!(delta_decay_bound(2.0, 0.01, 7), 0.01);
        let cb = cylinder_bound(HP, m, 0.01, 1.0).unwrap();
        assert!(close(cb, 4.833_564_67e-3, 1e-7), "{cb}");
        assert_eq!(g2_floor(0.01), 0.0025);
        let cs = claim_sum_bound(HP, m, 0.01, 1.0, 0).unwrap();
        assert!(close(cs, 2.416_78e-3, 1e-5));
        assert!(cs >= claim_sum_lhs(&H, m, 0.01, 1.0, 0).unwrap());
        assert!(close(claim_sum_bound(HP, m, 0.01, 1.0, 3).unwrap() * 8.0, cs, 1e-14));
    }

    #[test]
    fn bounder_values() {
        let m = mu(&H, 0.01, 1.0).unwrap();
        let rhs = claim_bounder_rhs(&H, HP, m, 0.01, 1.0).unwrap();
        assert!(close(rhs, 1.000_042_766_6, 1e-10));
        let lhs = bounder_series(&H, m, 0.01, 1.0).unwrap();
        assert!(close(lhs, 1.004_590_8, 1e-6), "{lhs}");
        assert!(claim_bounder_rhs_rederived(HP, m, 0.01, 1.0).unwrap() >= lhs);
        assert!(truncation_bound(&H, m, 0.01, 0.0, 1.0).unwrap() == 0.0);
    }

    #[test]
    fn context_feasibility() {
        let c = BoundsContext::new(&H, 0.01, 1.0).unwrap();
        assert!(c.assumption1() && c.assumption2() && c.assumption3());
        let c = BoundsContext::new(&H, 0.1, 1.0).unwrap();
        assert!(c.assumption1() && c.assumption2() && !c.assumption3());
        assert!(c.length_bound.is_some() && c.inclusion_radius.is_none());
        let c = BoundsContext::new(&H, 0.3, 1.0).unwrap();
        assert!(c.mu.is_none() && !c.assumption1());
    }

    fn models() -> Vec<ModulusModel> {
        vec![
            H,
            ModulusModel::power(2.0, 0.5).unwrap(),
            ModulusModel::power(2.0, 1.5).unwrap(),
            ModulusModel::power(1.5, 2.0 / 3.0).unwrap(),
            ModulusModel::power(1.2, 1.0 / 1.2).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn r_prime_and_mu_increase(a in 1e-4f64..0.9, b in 1e-4f64..0.9, m in 0usize..5) {
            let model = &models()[m];
            let top = omega_inv_eighth(model).unwrap();
            let (lo, hi) = if a < b { (a * top, b * top) } else { (b * top, a * top) };
            prop_assume!(hi - lo > 1e-9 * hi);
            prop_assert!(r_prime(model, lo, 1.0).unwrap() < r_prime(model, hi, 1.0).unwrap());
            prop_assert!(mu(model, lo, 1.0).unwrap() <= mu(model, hi, 1.0).unwrap());
        }

        #[test]
        fn claim_nasty_chain(frac in 1e-4f64..0.999, m in 0usize..5) {
            let model = &models()[m];
            let bl = beta_l(model).unwrap();
            prop_assert!(bl <= omega_inv_eighth(model).unwrap());
            prop_assert!(mu(model, frac * bl, 1.0).unwrap() < 2.0);
        }

        #[test]
        fn claim_sum_holds(frac in 1e-3f64..0.999, c_sm in 0.05f64..1.0, k in 0usize..=30) {
            let model = ModulusModel::power(2.0, c_sm).unwrap();
            let pt = model.power_type();
            let d = frac * beta_i(&model, 2.0).unwrap();
            let m = mu(&model, d, 1.0).unwrap();
            prop_assert!(claim_sum_lhs(&model, m, d, 1.0, k).unwrap() <= claim_sum_bound(pt, m, d, 1.0, k).unwrap());
        }

        #[test]
        fn rederived_bounder_dominates_series(frac in 1e-3f64..0.999, m in 0usize..5) {
            let model = &models()[m];
            let pt = model.power_type();
            let d = frac * beta_l(model).unwrap();
            let mv = mu(model, d, 1.0).unwrap();
            let series = bounder_series(model, mv, d, 1.0).unwrap();
            prop_assert!(series <= claim_bounder_rhs_rederived(pt, mv, d, 1.0).unwrap());
        }

        #[test]
        fn length_and_inclusion_increase(a in 1e-3f64..0.99, b in 1e-3f64..0.99) {
            let bl = beta_l(&H).unwrap();
            let bi = beta_i(&H, 2.0).unwrap();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi - lo > 1e-6);
            prop_assert!(length_bound(&H, HP, lo * bl, 1.0).unwrap() < length_bound(&H, HP, hi * bl, 1.0).unwrap());
            prop_assert!(inclusion_radius(&H, HP, lo * bi, 1.0).unwrap() < inclusion_radius(&H, HP, hi * bi, 1.0).unwrap());
        }
    }
}
