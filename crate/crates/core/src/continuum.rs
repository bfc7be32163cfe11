//! Exact dispersion of the continuum Kelvin–Voigt bar
//! `u'' + c u̇'' − ü / v_r² = 0`.
//!
//! Substituting `u = A e^{i(βx − ωt)}` gives `β²(1 − iωc) = (ω/v_r)²`; the
//! positive-direction root is `β = A* + iB*` with
//! `A* = (ω/v_r)(1+ω²c²)^{-1/4} cos(θ/2)`, `B* = (ω/v_r)(1+ω²c²)^{-1/4} sin(θ/2)`
//! and `θ = arctan(ωc)`.

use serde::Serialize;

use crate::complex::ComplexValue;
use crate::setting::{WaveSetting, OMEGA, V_REF};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumWave {
    /// Real wave number A* (1/length).
    pub a_star: f64,
    /// Spatial attenuation B* (1/length).
    pub b_star: f64,
    /// Phase velocity ω/A*.
    pub velocity: f64,
    /// Modulus of `1/(1 − iωc)`.
    pub rho_c: f64,
    /// Phase of `1/(1 − iωc)`.
    pub theta: f64,
}

impl ContinuumWave {
    pub fn wavenumber(&self) -> ComplexValue {
        ComplexValue::new(self.a_star, self.b_star)
    }
}

/// `1/(1 − iωc) = Ā + B̄i` with `Ā = 1/(1+ω²c²)`, `B̄ = ωc/(1+ω²c²)`.
pub fn complex_factor(omega_c: f64) -> ComplexValue {
    let den = 1.0 + omega_c * omega_c;
    ComplexValue::new(1.0 / den, omega_c / den)
}

pub fn continuum_wavenumber(s: &WaveSetting) -> ContinuumWave {
    continuum_wavenumber_for(s.derived_groups().omega_c)
}

pub fn continuum_wavenumber_for(omega_c: f64) -> ContinuumWave {
    let k0 = OMEGA / V_REF;
    let x2 = omega_c * omega_c;
    let rho_c = 1.0 / (1.0 + x2).sqrt();
    let theta = omega_c.atan();
    let scale = k0 * rho_c.sqrt();
    let (s, c) = (0.5 * theta).sin_cos();
    let a_star = scale * c;
    ContinuumWave {
        a_star,
        b_star: scale * s,
        velocity: OMEGA / a_star,
        rho_c,
        theta,
    }
}
