//! Spurious reflection at a node joining elements of length ℓ (left) and
//! L = αℓ (right).
//!
//! A unit incident wave, a reflected wave `A_re` and a transmitted wave
//! `A_tr = 1 + A_re` are inserted into the equilibrium equation of the
//! interface node. With the interface row written as
//! `Ã u₋ + B̃ u₀ + C̃ u₊ = 0` (scaled by ℓ/E, with Newmark amplitudes for the
//! rates) the reflection amplitude is
//!
//! `A_re = −(Ã e^{−iβℓ} + B̃ + C̃ e^{iβ_tr L}) / (Ã e^{iβℓ} + B̃ + C̃ e^{iβ_tr L})`.

use serde::Serialize;

use crate::complex::{expi, ComplexValue};
use crate::dispersion::numerical_wave;
use crate::error::{Error, Result};
use crate::setting::WaveSetting;

/// Real and imaginary parts of the three interface-row weights `Ã`, `B̃`, `C̃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterfaceCoefficients {
    pub a_bar: f64,
    pub a_star: f64,
    pub b_bar: f64,
    pub b_star: f64,
    pub c_bar: f64,
    pub c_star: f64,
}

impl InterfaceCoefficients {
    pub fn a(&self) -> ComplexValue {
        ComplexValue::new(self.a_bar, self.a_star)
    }
    pub fn b(&self) -> ComplexValue {
        ComplexValue::new(self.b_bar, self.b_star)
    }
    pub fn c(&self) -> ComplexValue {
        ComplexValue::new(self.c_bar, self.c_star)
    }
}

/// Mass weight of the interface node in `B̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterfaceMassTerm {
    /// `4Ψ₁M₁ r (1 + α)`: the node carries mass from both adjacent elements,
    /// ρℓM₁ + ρLM₁.
    #[default]
    Assembled,
    /// `4Ψ₁M₁ r (1 + 1/α)`, mirroring the stiffness factor.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionResult {
    pub a_re: ComplexValue,
    /// `1 + a_re`.
    pub a_tr: ComplexValue,
    /// `100 |a_re|`.
    pub magnitude_pct: f64,
    /// Incident `β ℓ` on the left mesh.
    pub beta_in_l: ComplexValue,
    /// Transmitted `β_tr L` on the right mesh.
    pub beta_tr_l: ComplexValue,
}

pub fn interface_coefficients(s: &WaveSetting) -> Result<InterfaceCoefficients> {
    interface_coefficients_with(s, InterfaceMassTerm::Assembled)
}

pub fn interface_coefficients_with(
    s: &WaveSetting,
    term: InterfaceMassTerm,
) -> Result<InterfaceCoefficients> {
    s.validate()?;
    let g = s.derived_groups();
    let (sn, c) = g.omega_dt.sin_cos();
    let r = (c - 1.0) / (1.0 + c);
    let q = sn / (1.0 + c);
    let (m1, m2) = (s.mass.m1(), s.mass.m2());
    let al = s.alpha;
    let mass_weight = match term {
        InterfaceMassTerm::Assembled => 1.0 + al,
        InterfaceMassTerm::AsPrinted => 1.0 + 1.0 / al,
    };
    Ok(InterfaceCoefficients {
        a_bar: -1.0 + 4.0 * g.psi1 * r * m2,
        a_star: 2.0 * g.psi2 * q,
        b_bar: 1.0 + 1.0 / al + 4.0 * g.psi1 * m1 * r * mass_weight,
        b_star: -2.0 * g.psi2 * q * (1.0 + 1.0 / al),
        c_bar: -1.0 / al + 4.0 * g.psi1 * al * r * m2,
        c_star: 2.0 / al * g.psi2 * q,
    })
}

pub fn reflection_amplitude(s: &WaveSetting) -> Result<ReflectionResult> {
    reflection_amplitude_with(s, InterfaceMassTerm::Assembled)
}

pub fn reflection_amplitude_with(s: &WaveSetting, term: InterfaceMassTerm) -> Result<ReflectionResult> {
    let k = interface_coefficients_with(s, term)?;
    let beta_in_l = numerical_wave(s)?.beta_l();
    let beta_tr_l = numerical_wave(&s.right_side())?.beta_l();
    let tail = k.b() + k.c() * expi(beta_tr_l);
    let num = k.a() * expi(-beta_in_l) + tail;
    let den = k.a() * expi(beta_in_l) + tail;
    if den.norm() == 0.0 || !den.norm().is_finite() {
        return Err(Error::SingularInterface);
    }
    let a_re = -num / den;
    Ok(ReflectionResult {
        a_re,
        a_tr: a_re + 1.0,
        magnitude_pct: 100.0 * a_re.norm(),
        beta_in_l,
        beta_tr_l,
    })
}

/// `sin z = G + Hi` given `cos z = D − F'i`, with `z` in the forward-decaying
/// branch. `H` takes the sign of `D` (it equals `cos d sinh h`); when it
/// vanishes `G` follows from `G² − H² = 1 − D² + F'²`.
fn sine_parts(dd: f64, fp: f64) -> (f64, f64) {
    let u = 1.0 - dd * dd + fp * fp;
    let disc = (u * u + 4.0 * dd * dd * fp * fp).sqrt();
    let h2 = if u > 0.0 {
        2.0 * dd * dd * fp * fp / (u + disc)
    } else {
        0.5 * (disc - u)
    };
    let h = dd.signum() * h2.sqrt();
    let g = if h != 0.0 {
        dd * fp / h
    } else {
        (u + h2).max(0.0).sqrt()
    };
    (g, h)
}

/// Real-arithmetic form of the reflection amplitude, kept as an independent
/// check of the complex evaluation. Uses the conjugate convention
/// `cos βℓ = D − F'i` with `F' = −Im(cos βℓ)`.
pub fn reflection_amplitude_expanded(s: &WaveSetting, term: InterfaceMassTerm) -> Result<ComplexValue> {
    let k = interface_coefficients_with(s, term)?;
    let left = numerical_wave(s)?.cos_bl;
    let right = numerical_wave(&s.right_side())?.cos_bl;
    let (d, f) = (left.re, -left.im);
    let (db, fb) = (right.re, -right.im);
    let (g, h) = sine_parts(d, f);
    let (gb, hb) = sine_parts(db, fb);
    let InterfaceCoefficients {
        a_bar: ab,
        a_star: ast,
        b_bar: bb,
        b_star: bst,
        c_bar: cb,
        c_star: cst,
    } = k;
    let d1 = ab * d + ast * g + bb + cb * db - cst * gb + ast * f + ab * h + cst * fb - cb * hb;
    let d2 = -ab * f + ast * h - cb * fb - cst * hb + ast * d - ab * g + bst + cst * db + cb * gb;
    let d3 = ab * d - ast * g + bb + cb * db - cst * gb + ast * f - ab * h + cst * fb - cb * hb;
    let d4 = -ab * f - ast * h - cb * fb - cst * hb + ast * d + ab * g + bst + cst * db + cb * gb;
    let den = d3 * d3 + d4 * d4;
    if den == 0.0 {
        return Err(Error::SingularInterface);
    }
    Ok(-ComplexValue::new(d1 * d3 + d2 * d4, d2 * d3 - d1 * d4) / den)
}
