// SPDX-License-Identifier: Apache-2.0

//! Modulus of smoothness models and the functions derived from them.
//!
//! A model supplies `ρ(τ)`; `ω(τ) = ρ(τ)/τ` and the hyperplane deviation
//! `ζ⁺(ε)` follow from it. For the Hilbert model everything is closed form.
//! For power and tabulated models `ζ⁺` is taken as the upper bound
//! `1 + ρ(2ε)`, which keeps every downstream constant on the safe side.

use serde::{Deserialize, Serialize};

use super::SpaceError;
use crate::numeric::invert_increasing;

const INVERSE_CAP: f64 = 1e12;

/// Constants of a power-type bound `ρ(τ) <= c_sm τ^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerType {
    pub s: f64,
    pub c_sm: f64,
}

impl PowerType {
    pub fn new(s: f64, c_sm: f64) -> Result<Self, SpaceError> {
        if !(s > 1.0 && s <= 2.0) {
            return Err(SpaceError::InvalidModulus(format!("power type s = {s} outside (1, 2]")));
        }
        if !(c_sm > 0.0 && c_sm.is_finite()) {
            return Err(SpaceError::InvalidModulus(format!("C_sm = {c_sm} must be positive")));
        }
        Ok(Self { s, c_sm })
    }

    pub fn rho(&self, tau: f64) -> f64 {
        self.c_sm * tau.powf(self.s)
    }

    /// Default power profile for `ℓp`: `s = min(p, 2)`, `C_sm = 1/p` for
    /// `p <= 2` and `(p - 1)/2` for `p >= 2`.
    pub fn for_lp(p: f64) -> Self {
        if p <= 2.0 {
            Self { s: p, c_sm: 1.0 / p }
        } else {
            Self { s: 2.0, c_sm: (p - 1.0) / 2.0 }
        }
    }
}

/// Sampled `(τ, ρ(τ))` grid, interpolated linearly between samples.
///
/// On the first cell `ρ(τ) = ρ(τ₁)(τ/τ₁)^s`, so that `ω(τ) → 0` as `τ → 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusTable {
    pub s: f64,
    pub c_sm: f64,
    pub tau: Vec<f64>,
    pub rho: Vec<f64>,
}

impl ModulusTable {
    /// Checks `ρ(0) = 0`, strict monotonicity, convexity and the
    /// Day–Nordlander bracket `√(1+τ²) − 1 <= ρ(τ) <= τ` within `slack`.
    pub fn validate(&self, slack: f64) -> Result<(), SpaceError> {
        PowerType::new(self.s, self.c_sm)?;
        let bad = |msg: String| Err(SpaceError::InvalidModulus(msg));
        if self.tau.len() != self.rho.len() || self.tau.len() < 2 {
            return bad("table needs at least two matching (tau, rho) samples".into());
        }
        if self.tau[0] != 0.0 || self.rho[0] != 0.0 {
            return bad("table must start at (0, 0)".into());
        }
        for w in self.tau.windows(2) {
            if !(w[1] > w[0]) {
                return bad("tau samples must be strictly increasing".into());
            }
        }
        for w in self.rho.windows(2) {
            if !(w[1] > w[0]) {
                return bad("rho samples must be strictly increasing".into());
            }
        }
        for i in 1..self.tau.len() - 1 {
            let left = (self.rho[i] - self.rho[i - 1]) / (self.tau[i] - self.tau[i - 1]);
            let right = (self.rho[i + 1] - self.rho[i]) / (self.tau[i + 1] - self.tau[i]);
            if right < left - slack {
                return bad(format!("rho is not convex at tau = {}", self.tau[i]));
            }
        }
        for (&t, &r) in self.tau.iter().zip(&self.rho) {
            if r < hilbert_rho(t) - slack || r > t + slack {
                return bad(format!("rho({t}) = {r} violates the Day-Nordlander bracket"));
            }
        }
        Ok(())
    }

    fn rho_at(&self, tau: f64) -> f64 {
        let last = self.tau.len() - 1;
        if tau > self.tau[last] {
            // Outside the sampled range fall back to the power-type upper bound.
            return self.rho[last].max(self.c_sm * tau.powf(self.s));
        }
        let k = self.tau.partition_point(|&t| t <= tau).clamp(1, last);
        let (t0, t1) = (self.tau[k - 1], self.tau[k]);
        if k == 1 {
            return self.rho[1] * (tau / t1).powf(self.s);
        }
        let w = (tau - t0) / (t1 - t0);
        self.rho[k - 1] + w * (self.rho[k] - self.rho[k - 1])
    }
}

/// How `ρ_X` is supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusModel {
    /// `ρ(τ) = √(1 + τ²) − 1`.
    ExactHilbert,
    /// `ρ(τ) = c_sm τ^s`.
    #[serde(rename = "power")]
    Power { s: f64, c_sm: f64 },
    /// Interpolated samples, with the power profile as fallback beyond the grid.
    #[serde(rename = "table")]
    Table(ModulusTable),
}

/// `√(1 + τ²) − 1` without cancellation for small `τ`.
pub(crate) fn hilbert_rho(tau: f64) -> f64 {
    let t2 = tau * tau;
    t2 / ((1.0 + t2).sqrt() + 1.0)
}

impl ModulusModel {
    pub fn power(s: f64, c_sm: f64) -> Result<Self, SpaceError> {
        PowerType::new(s, c_sm)?;
        Ok(Self::Power { s, c_sm })
    }

    pub fn validate(&self) -> Result<(), SpaceError> {
        match self {
            Self::ExactHilbert => Ok(()),
            Self::Power { s, c_sm } => PowerType::new(*s, *c_sm).map(|_| ()),
            Self::Table(t) => t.validate(1e-12),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::ExactHilbert => "exact_hilbert",
            Self::Power { .. } => "power",
            Self::Table(_) => "table",
        }
    }

    /// Power-type constants that enter the theorem constants.
    pub fn power_type(&self) -> PowerType {
        match *self {
            Self::ExactHilbert => PowerType { s: 2.0, c_sm: 0.5 },
            Self::Power { s, c_sm } => PowerType { s, c_sm },
            Self::Table(ref t) => PowerType { s: t.s, c_sm: t.c_sm },
        }
    }

    pub fn rho(&self, tau: f64) -> Result<f64, SpaceError> {
        if !(tau >= 0.0) {
            return Err(SpaceError::NegativeArgument { name: "tau", value: tau });
        }
        Ok(self.rho_unchecked(tau))
    }

    fn rho_unchecked(&self, tau: f64) -> f64 {
        match self {
            Self::ExactHilbert => hilbert_rho(tau),
            Self::Power { s, c_sm } => c_sm * tau.powf(*s),
            Self::Table(t) => t.rho_at(tau),
        }
    }

    /// `ω(τ) = ρ(τ)/τ` for `τ > 0`.
    pub fn omega(&self, tau: f64) -> Result<f64, SpaceError> {
        if !(tau > 0.0) {
            return Err(SpaceError::NegativeArgument { name: "tau", value: tau });
        }
        Ok(self.omega_unchecked(tau))
    }

    fn omega_unchecked(&self, tau: f64) -> f64 {
        if tau == 0.0 {
            return 0.0;
        }
        match self {
            Self::ExactHilbert => tau / ((1.0 + tau * tau).sqrt() + 1.0),
            _ => self.rho_unchecked(tau) / tau,
        }
    }

    /// `ω⁻¹(y)` by bisection.
    pub fn omega_inv(&self, y: f64) -> Result<f64, SpaceError> {
        if !(y > 0.0) {
            return Err(SpaceError::NegativeArgument { name: "y", value: y });
        }
        if matches!(self, Self::ExactHilbert) && y >= 1.0 {
            return Err(SpaceError::NotAttainable { what: "omega", value: y });
        }
        invert_increasing(|t| self.omega_unchecked(t), y, INVERSE_CAP)
            .map_err(|_| SpaceError::NotAttainable { what: "omega", value: y })
    }

    /// `ζ⁺(ε)`.
    pub fn zeta_plus(&self, eps: f64) -> Result<f64, SpaceError> {
        Ok(1.0 + self.zeta_plus_minus_one(eps)?)
    }

    /// `ζ⁺(ε) − 1`, evaluated without cancellation.
    pub fn zeta_plus_minus_one(&self, eps: f64) -> Result<f64, SpaceError> {
        if !(eps >= 0.0) {
            return Err(SpaceError::NegativeArgument { name: "eps", value: eps });
        }
        Ok(self.zeta_excess_unchecked(eps))
    }

    fn zeta_excess_unchecked(&self, eps: f64) -> f64 {
        match self {
            Self::ExactHilbert => hilbert_rho(eps),
            _ => self.rho_unchecked(2.0 * eps),
        }
    }

    /// `(ζ⁺)⁻¹(v)` for `v >= 1`, by bisection.
    pub fn zeta_plus_inv(&self, v: f64) -> Result<f64, SpaceError> {
        if !(v >= 1.0) {
            return Err(SpaceError::NotAttainable { what: "zeta_plus", value: v });
        }
        if v == 1.0 {
            return Ok(0.0);
        }
        invert_increasing(|e| self.zeta_excess_unchecked(e), v - 1.0, INVERSE_CAP)
            .map_err(|_| SpaceError::NotAttainable { what: "zeta_plus", value: v })
    }
}
