// SPDX-License-Identifier: Apache-2.0

//! The normed space `ℓp^n`, `1 < p < ∞`.
//!
//! [`SpaceModel`] owns the exponent, the dimension and the modulus model used
//! by every bound. Norms, the duality map and quasi-orthogonality are exact;
//! the smoothness moduli come from [`ModulusModel`] and can be cross-checked
//! against the sampling estimators in [`estimate`].

pub mod estimate;
mod modulus;
mod vector;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use modulus::{ModulusModel, ModulusTable, PowerType};
pub use vector::Vector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid modulus model: {0}")]
    InvalidModulus(String),
    #[error("dimension mismatch: space has {expected}, vector has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation undefined for the zero vector")]
    ZeroVector,
    #[error("argument {name} = {value} is out of range")]
    NegativeArgument { name: &'static str, value: f64 },
    #[error("{what} does not attain {value}")]
    NotAttainable { what: &'static str, value: f64 },
    #[error("estimation budget must be positive")]
    ZeroBudget,
}

/// Serialized form of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceConfig {
    pub family: String,
    pub p: f64,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<ModulusModel>,
}

/// `ℓp^n` together with the modulus model used for bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceConfig", into = "SpaceConfig")]
pub struct SpaceModel {
    p: f64,
    dim: usize,
    modulus: ModulusModel,
}

impl SpaceModel {
    /// `ℓp^n` with the default modulus: exact for `p = 2`, otherwise the
    /// power profile of [`PowerType::for_lp`].
    pub fn lp(p: f64, dim: usize) -> Result<Self, SpaceError> {
        let modulus = if p == 2.0 {
            ModulusModel::ExactHilbert
        } else {
            let pt = PowerType::for_lp(p);
            ModulusModel::Power { s: pt.s, c_sm: pt.c_sm }
        };
        Self::with_modulus(p, dim, modulus)
    }

    pub fn euclidean(dim: usize) -> Self {
        Self { p: 2.0, dim, modulus: ModulusModel::ExactHilbert }
    }

    pub fn with_modulus(p: f64, dim: usize, modulus: ModulusModel) -> Result<Self, SpaceError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(SpaceError::InvalidSpace(format!(
                "p = {p} is not in (1, inf); the space would not be uniformly smooth"
            )));
        }
        if dim < 2 {
            return Err(SpaceError::InvalidSpace(format!("dimension {dim} is below 2")));
        }
        if matches!(modulus, ModulusModel::ExactHilbert) && p != 2.0 {
            return Err(SpaceError::InvalidModulus(format!("exact_hilbert modulus requires p = 2, got p = {p}")));
        }
        modulus.validate()?;
        Ok(Self { p, dim, modulus })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &ModulusModel {
        &self.modulus
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn dual_exponent(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    fn check_dim(&self, x: &Vector) -> Result<(), SpaceError> {
        if x.dim() != self.dim {
            return Err(SpaceError::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// Builds a vector of this space.
    pub fn vector(&self, coords: Vec<f64>) -> Result<Vector, SpaceError> {
        let v = Vector::new(coords)?;
        self.check_dim(&v)?;
        Ok(v)
    }

    pub fn norm(&self, x: &Vector) -> Result<f64, SpaceError> {
        self.check_dim(x)?;
        Ok(lp_norm(x.coords(), self.p))
    }

    /// `‖x − y‖`; dimensions are assumed to agree.
    pub(crate) fn dist(&self, x: &Vector, y: &Vector) -> f64 {
        debug_assert_eq!(x.dim(), y.dim());
        lp_norm((x - y).coords(), self.p)
    }

    pub(crate) fn norm_unchecked(&self, x: &Vector) -> f64 {
        lp_norm(x.coords(), self.p)
    }

    /// The unit functional (in `ℓq`) attaining the norm of `x`:
    /// `sign(x_i) |x_i|^{p−1} / ‖x‖^{p−1}`.
    pub fn dual_functional(&self, x: &Vector) -> Result<Vector, SpaceError> {
        let n = self.norm(x)?;
        if n == 0.0 {
            return Err(SpaceError::ZeroVector);
        }
        Ok(self.dual_unchecked(x, n))
    }

    pub(crate) fn dual_unchecked(&self, x: &Vector, norm: f64) -> Vector {
        let pm1 = self.p - 1.0;
        let coords = x
            .coords()
            .iter()
            .map(|&c| {
                let r = c / norm;
                if self.p == 2.0 {
                    r
                } else {
                    r.signum() * r.abs().powf(pm1)
                }
            })
            .collect();
        Vector::new(coords).unwrap_or_else(|_| Vector::zeros(x.dim()))
    }

    /// `⟨J(x), y⟩`; zero exactly when `y` is quasi-orthogonal to `x`.
    pub fn quasi_orth_defect(&self, x: &Vector, y: &Vector) -> Result<f64, SpaceError> {
        self.check_dim(y)?;
        let j = self.dual_functional(x)?;
        Ok(j.dot(y))
    }

    /// Norm of a functional in the dual space `ℓq`.
    pub fn dual_norm(&self, f: &Vector) -> Result<f64, SpaceError> {
        self.check_dim(f)?;
        Ok(lp_norm(f.coords(), self.dual_exponent()))
    }
}

impl TryFrom<SpaceConfig> for SpaceModel {
    type Error = SpaceError;

    fn try_from(cfg: SpaceConfig) -> Result<Self, Self::Error> {
        if cfg.family != "lp" {
            return Err(SpaceError::InvalidSpace(format!("unsupported space family '{}'", cfg.family)));
        }
        match cfg.modulus {
            Some(m) => Self::with_modulus(cfg.p, cfg.dim, m),
            None => Self::lp(cfg.p, cfg.dim),
        }
    }
}

impl From<SpaceModel> for SpaceConfig {
    fn from(s: SpaceModel) -> Self {
        SpaceConfig { family: "lp".into(), p: s.p, dim: s.dim, modulus: Some(s.modulus) }
    }
}

/// `ℓp` norm of a coordinate slice, scaled by the largest entry.
pub(crate) fn lp_norm(x: &[f64], p: f64) -> f64 {
    let m = x.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    if m == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        let s: f64 = x.iter().map(|c| (c / m) * (c / m)).sum();
        return m * s.sqrt();
    }
    let s: f64 = x.iter().map(|c| (c.abs() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}
