//! Dimensionless problem statement shared by all analyses.
//!
//! The normalization fixes ω = 2π, T = 1, v_r = 1 and λ = v_r·T = 1. A
//! setting is then fully described by the time mesh parameter `a = T/Δt`,
//! the space mesh parameter `b = λ/ℓ`, the physical damping `γ = ωc/2`, the
//! element mass model and the element-size ratio `α = L/ℓ` across an
//! interface.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angular frequency in the normalized units.
pub const OMEGA: f64 = 2.0 * PI;
/// Reference wave velocity √(E/ρ) in the normalized units.
pub const V_REF: f64 = 1.0;
pub const PERIOD: f64 = 1.0;
pub const WAVELENGTH: f64 = 1.0;

/// Two-node element mass matrix `ρℓ [[m1, m2], [m2, m1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassModel {
    Consistent,
    Lumped,
}

impl MassModel {
    pub const ALL: [MassModel; 2] = [MassModel::Consistent, MassModel::Lumped];

    pub fn m1(self) -> f64 {
        match self {
            MassModel::Consistent => 1.0 / 3.0,
            MassModel::Lumped => 0.5,
        }
    }

    pub fn m2(self) -> f64 {
        match self {
            MassModel::Consistent => 1.0 / 6.0,
            MassModel::Lumped => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MassModel::Consistent => "consistent",
            MassModel::Lumped => "lumped",
        }
    }
}

impl fmt::Display for MassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MassModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "consistent" => Ok(MassModel::Consistent),
            "lumped" => Ok(MassModel::Lumped),
            other => Err(format!("unknown mass model '{other}'")),
        }
    }
}

/// Dimensionless parameters derived from a [`WaveSetting`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedGroups {
    /// ρℓ²/(EΔt²) = (a/b)².
    pub psi1: f64,
    /// c/Δt = γa/π.
    pub psi2: f64,
    /// ωΔt = 2π/a.
    pub omega_dt: f64,
    /// ωc = 2γ.
    pub omega_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSetting {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub mass: MassModel,
    pub alpha: f64,
}

impl WaveSetting {
    /// Uniform-mesh setting (α = 1).
    pub fn new(a: f64, b: f64, gamma: f64, mass: MassModel) -> Result<Self> {
        Self::with_alpha(a, b, gamma, mass, 1.0)
    }

    pub fn with_alpha(a: f64, b: f64, gamma: f64, mass: MassModel, alpha: f64) -> Result<Self> {
        let s = WaveSetting {
            a,
            b,
            gamma,
            mass,
            alpha,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::domain("a", self.a, "time mesh parameter must be positive"));
        }
        if !(self.b.is_finite() && self.b > 0.0) {
            return Err(Error::domain("b", self.b, "space mesh parameter must be positive"));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::domain("gamma", self.gamma, "physical damping must be non-negative"));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::domain("alpha", self.alpha, "element-size ratio must be positive"));
        }
        Ok(())
    }

    /// Same material and time step, but mesh parameter `b/α`: the setting seen
    /// by a wave on the right side of an interface with `L = αℓ`.
    pub fn right_side(&self) -> WaveSetting {
        WaveSetting {
            b: self.b / self.alpha,
            alpha: 1.0,
            ..*self
        }
    }

    pub fn derived_groups(&self) -> DerivedGroups {
        DerivedGroups {
            psi1: (self.a / self.b).powi(2),
            psi2: self.gamma * self.a / PI,
            omega_dt: 2.0 * PI / self.a,
            omega_c: 2.0 * self.gamma,
        }
    }

    pub fn dt(&self) -> f64 {
        PERIOD / self.a
    }

    pub fn element_length(&self) -> f64 {
        WAVELENGTH / self.b
    }

    /// Kelvin–Voigt damping constant c in the normalized units.
    pub fn damping_c(&self) -> f64 {
        self.gamma / PI
    }

    /// v_r Δt / ℓ = b/a.
    pub fn courant(&self) -> f64 {
        self.b / self.a
    }
}

/// Free-function form of [`WaveSetting::derived_groups`] with validation.
pub fn derived_groups(s: &WaveSetting) -> Result<DerivedGroups> {
    s.validate()?;
    Ok(s.derived_groups())
}
