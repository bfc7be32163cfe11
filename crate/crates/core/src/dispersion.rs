//! Numerical wave number of the FEM/Newmark scheme.
//!
//! Inserting `u_{j,k} = A e^{i(β_n jℓ − ωkΔt)}` into the nodal stencil and the
//! Newmark relations gives a 3×3 homogeneous system in `(A, BΔt, CΔt²)`. Its
//! vanishing determinant fixes `cos(β_nℓ) = (D₁ + F₁i)/(D₂ + F₁i) = D + Fi`,
//! which is then inverted for `β_nℓ = d + hi`.

use serde::Serialize;

use crate::complex::{ComplexValue, I};
use crate::continuum::continuum_wavenumber;
use crate::error::{Error, Result};
use crate::setting::WaveSetting;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericalWave {
    /// Phase increment per element, Re(β_nℓ).
    pub d: f64,
    /// Attenuation per element, Im(β_nℓ).
    pub h: f64,
    /// `D + Fi`.
    pub cos_bl: ComplexValue,
    /// Velocity amplitude times Δt for a unit displacement amplitude.
    pub amp_vel: ComplexValue,
    /// Acceleration amplitude times Δt² for a unit displacement amplitude.
    pub amp_acc: ComplexValue,
}

impl NumericalWave {
    pub fn beta_l(&self) -> ComplexValue {
        ComplexValue::new(self.d, self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionErrors {
    /// `100 (d/ℓ − A*)/(d/ℓ)`.
    pub vel_err_pct: f64,
    /// `100 (B* − h/ℓ)/B*`; `None` without physical damping.
    pub damp_err_pct: Option<f64>,
}

/// The three scalars `D₁`, `D₂`, `F₁` whose quotient is `cos β_nℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineTerms {
    pub d1: f64,
    pub d2: f64,
    pub f1: f64,
}

fn check_sampling(s: &WaveSetting) -> Result<()> {
    s.validate()?;
    if s.a <= 2.0 {
        return Err(Error::BelowNyquist {
            name: "a",
            value: s.a,
        });
    }
    if s.b <= 2.0 {
        return Err(Error::BelowNyquist {
            name: "b",
            value: s.b,
        });
    }
    Ok(())
}

pub fn cosine_terms(s: &WaveSetting) -> CosineTerms {
    let g = s.derived_groups();
    let (sn, c) = g.omega_dt.sin_cos();
    let (m1, m2) = (s.mass.m1(), s.mass.m2());
    CosineTerms {
        d1: -((c + 1.0) / 4.0 + g.psi1 * m1 * (c - 1.0)),
        d2: -(c + 1.0) / 4.0 + g.psi1 * m2 * (c - 1.0),
        f1: g.psi2 * sn / 2.0,
    }
}

/// `D + Fi` in the real-arithmetic form
/// `D = (D₁D₂ + F₁²)/(D₂² + F₁²)`,
/// `F = Ψ₁Ψ₂(cos ωΔt − 1)(M₁+M₂) sin ωΔt / 2 / (D₂² + F₁²)`.
pub fn cos_numerical_wavenumber(s: &WaveSetting) -> Result<ComplexValue> {
    check_sampling(s)?;
    let t = cosine_terms(s);
    let g = s.derived_groups();
    let (sn, c) = g.omega_dt.sin_cos();
    let den = t.d2 * t.d2 + t.f1 * t.f1;
    let d = (t.d1 * t.d2 + t.f1 * t.f1) / den;
    let f = 0.5 * g.psi1 * g.psi2 * (c - 1.0) * (s.mass.m1() + s.mass.m2()) * sn / den;
    Ok(ComplexValue::new(d, f))
}

/// Solve `cos(d + hi) = D + Fi` for `d ∈ [0, π]` and `h` with the sign of `−F`
/// (`h ≥ 0` when `F = 0`).
///
/// `sin²d` and `sinh²h` are the roots of `x² ∓ (1 − D² − F²)x − F² = 0`; the
/// larger one is taken from the quadratic formula and the smaller from the
/// product of roots, which avoids cancellation when the damping is tiny.
pub fn invert_transcendental(cos_bl: ComplexValue) -> (f64, f64) {
    let (dd, ff) = (cos_bl.re, cos_bl.im);
    let t = 1.0 - dd * dd - ff * ff;
    let r = t.hypot(2.0 * ff);
    let (p, q) = if t >= 0.0 {
        let big = 0.5 * (t + r);
        (big, if big > 0.0 { ff * ff / big } else { 0.0 })
    } else {
        let big = 0.5 * (r - t);
        (ff * ff / big, big)
    };
    let h_mag = q.sqrt().asinh();
    let h = if ff > 0.0 { -h_mag } else { h_mag };
    let d = p.sqrt().atan2(dd / h_mag.cosh());
    (d, h)
}

/// Which radicand the literal closed form uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicandForm {
    /// `(1+D²+F²)² − 4D²`, the one consistent with `cos²d cosh²h = D²`.
    Corrected,
    /// `(1+D²+F²) − 4D²`, without the square on the first term.
    AsPrinted,
}

/// Literal closed form `cos d = √((S − √R)/2)`, `cosh h = √((S + √R)/2)` with
/// `S = 1 + D² + F²`. Only meaningful for `D ≥ 0`: it returns `d ∈ [0, π/2]`
/// and `h ≥ 0`. Kept for comparison with [`invert_transcendental`].
pub fn invert_closed_form(cos_bl: ComplexValue, form: RadicandForm) -> (f64, f64) {
    let (dd, ff) = (cos_bl.re, cos_bl.im);
    let s = 1.0 + dd * dd + ff * ff;
    let radicand = match form {
        RadicandForm::Corrected => s * s - 4.0 * dd * dd,
        RadicandForm::AsPrinted => s - 4.0 * dd * dd,
    };
    let root = radicand.max(0.0).sqrt();
    let cos_d = ((s - root) / 2.0).max(0.0).sqrt();
    let cosh_h = ((s + root) / 2.0).sqrt();
    let d = cos_d.min(1.0).acos();
    let h = (cosh_h + (cosh_h * cosh_h - 1.0).max(0.0).sqrt()).ln();
    (d, h)
}

/// Velocity and acceleration amplitudes (scaled by Δt and Δt²) of a unit
/// displacement harmonic under average acceleration:
/// `BΔt = −2i sin ωΔt/(cos ωΔt + 1)`, `CΔt² = 4(cos ωΔt − 1)/(cos ωΔt + 1)`.
pub fn eigenvector_amplitudes(omega_dt: f64) -> Result<(ComplexValue, ComplexValue)> {
    if !(omega_dt > 0.0 && omega_dt < std::f64::consts::PI) {
        return Err(Error::domain(
            "omega_dt",
            omega_dt,
            "must lie in (0, π) for the amplitudes to be finite",
        ));
    }
    let (sn, c) = omega_dt.sin_cos();
    let b_amp = ComplexValue::new(0.0, -2.0 * sn / (c + 1.0));
    let c_amp = ComplexValue::new(4.0 * (c - 1.0) / (c + 1.0), 0.0);
    Ok((b_amp, c_amp))
}

/// The 3×3 matrix acting on `(A, BΔt, CΔt²)` for a given `cos β_nℓ`.
pub fn dispersion_matrix(s: &WaveSetting, cos_bl: ComplexValue) -> [[ComplexValue; 3]; 3] {
    let g = s.derived_groups();
    let (sn, c) = g.omega_dt.sin_cos();
    let (m1, m2) = (s.mass.m1(), s.mass.m2());
    let one = ComplexValue::new(1.0, 0.0);
    let zero = ComplexValue::new(0.0, 0.0);
    let re = |x: f64| ComplexValue::new(x, 0.0);
    [
        [one - cos_bl, (one - cos_bl) * g.psi2, (cos_bl * m2 + m1) * g.psi1],
        [zero, re(c - 1.0), I * (0.5 * sn)],
        [re(c - 1.0), zero, re(-(c + 1.0) / 4.0)],
    ]
}

pub fn numerical_wave(s: &WaveSetting) -> Result<NumericalWave> {
    let cos_bl = cos_numerical_wavenumber(s)?;
    let (d, h) = invert_transcendental(cos_bl);
    let (amp_vel, amp_acc) = eigenvector_amplitudes(s.derived_groups().omega_dt)?;
    Ok(NumericalWave {
        d,
        h,
        cos_bl,
        amp_vel,
        amp_acc,
    })
}

pub fn dispersion_errors(s: &WaveSetting) -> Result<DispersionErrors> {
    let wave = numerical_wave(s)?;
    let cont = continuum_wavenumber(s);
    let beta_n = wave.d * s.b;
    let atten_n = wave.h * s.b;
    let vel_err_pct = 100.0 * (beta_n - cont.a_star) / beta_n;
    let damp_err_pct = (cont.b_star > 0.0).then(|| 100.0 * (cont.b_star - atten_n) / cont.b_star);
    Ok(DispersionErrors {
        vel_err_pct,
        damp_err_pct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ccos;
    use crate::setting::MassModel;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn setting(a: f64, b: f64, gamma: f64, mass: MassModel) -> WaveSetting {
        WaveSetting::new(a, b, gamma, mass).unwrap()
    }

    fn det3(m: &[[ComplexValue; 3]; 3]) -> ComplexValue {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn real_form_matches_complex_quotient() {
        for mass in MassModel::ALL {
            for &(a, b, g) in &[(100.0, 100.0, 0.1), (10.0, 5.0, 0.01), (7.0, 30.0, 0.5)] {
                let s = setting(a, b, g, mass);
                let t = cosine_terms(&s);
                let direct = ComplexValue::new(t.d1, t.f1) / ComplexValue::new(t.d2, t.f1);
                let z = cos_numerical_wavenumber(&s).unwrap();
                assert!((z - direct).norm() < 1e-14 * (1.0 + z.norm()));
            }
        }
    }

    #[test]
    fn undamped_unity_courant_is_real() {
        let s = setting(40.0, 40.0, 0.0, MassModel::Consistent);
        let z = cos_numerical_wavenumber(&s).unwrap();
        let c = (2.0 * PI / 40.0).cos();
        let expected = (-(c + 1.0) / 4.0 - (c - 1.0) / 3.0) / (-(c + 1.0) / 4.0 + (c - 1.0) / 6.0);
        assert_eq!(z.im, 0.0);
        assert!((z.re - expected).abs() < 1e-15);
    }

    #[test]
    fn damped_value_lies_in_passband_with_negative_f() {
        let z = cos_numerical_wavenumber(&setting(100.0, 100.0, 0.1, MassModel::Consistent)).unwrap();
        assert!(z.re.abs() < 1.0);
        assert!(z.im < 0.0);
    }

    #[test]
    fn rejects_undersampled_meshes() {
        let e = cos_numerical_wavenumber(&setting(1.0, 1.0, 0.0, MassModel::Lumped)).unwrap_err();
        assert!(e.to_string().contains("mesh parameter below Nyquist limit"));
        assert!(numerical_wave(&setting(10.0, 2.0, 0.0, MassModel::Lumped)).is_err());
        assert!(dispersion_errors(&setting(2.0, 10.0, 0.0, MassModel::Lumped)).is_err());
    }

    #[test]
    fn invert_simple_cases() {
        let (d, h) = invert_transcendental(ComplexValue::new(0.5, 0.0));
        assert!((d - PI / 3.0).abs() < 1e-15);
        assert_eq!(h, 0.0);
        let (d, h) = invert_transcendental(ComplexValue::new(1.0, 0.0));
        assert_eq!((d, h), (0.0, 0.0));
        let z = ComplexValue::new(0.3, 0.2);
        let (d, h) = invert_transcendental(ccos(z));
        assert!((d - 0.3).abs() < 1e-14 && (h - 0.2).abs() < 1e-14);
    }

    #[test]
    fn invert_stopband() {
        let (d, h) = invert_transcendental(ComplexValue::new(1.5, 0.0));
        assert_eq!(d, 0.0);
        assert!((h - 1.5f64.acosh()).abs() < 1e-15);
        let (d, h) = invert_transcendental(ComplexValue::new(-1.5, 0.0));
        assert_eq!(d, PI);
        assert!(h > 0.0);
    }

    #[test]
    fn invert_positive_f_gives_negative_h() {
        let z = ComplexValue::new(0.7, 0.3);
        let (d, h) = invert_transcendental(z);
        assert!(h < 0.0);
        assert!((ccos(ComplexValue::new(d, h)) - z).norm() < 1e-14);
    }

    #[test]
    fn printed_radicand_fails_sanity_case() {
        let z = ComplexValue::new(0.5, 0.0);
        let (d, h) = invert_closed_form(z, RadicandForm::Corrected);
        assert!((d - PI / 3.0).abs() < 1e-12 && h.abs() < 1e-12);
        let (d, _) = invert_closed_form(z, RadicandForm::AsPrinted);
        assert!((d.cos() - 0.612_372_435_695_794_5).abs() < 1e-12);
    }

    #[test]
    fn closed_form_agrees_with_stable_form_when_well_conditioned() {
        let z = ccos(ComplexValue::new(0.4, 0.05));
        let (d0, h0) = invert_transcendental(z);
        let (d1, h1) = invert_closed_form(z, RadicandForm::Corrected);
        assert!((d0 - d1).abs() < 1e-10 && (h0 - h1).abs() < 1e-10);
    }

    #[test]
    fn amplitudes_special_values() {
        let (b, c) = eigenvector_amplitudes(PI / 2.0).unwrap();
        assert!((b - ComplexValue::new(0.0, -2.0)).norm() < 1e-15);
        assert!((c - ComplexValue::new(-4.0, 0.0)).norm() < 1e-15);
        let w = 1e-3;
        let (b, c) = eigenvector_amplitudes(w).unwrap();
        assert!((b.im + w).abs() < w * w);
        assert!((c.re + w * w).abs() < w * w * w);
        assert!(eigenvector_amplitudes(PI).is_err());
        assert!(eigenvector_amplitudes(0.0).is_err());
    }

    #[test]
    fn eigenvector_annihilates_newmark_rows() {
        let s = setting(100.0, 100.0, 0.1, MassModel::Consistent);
        for i in 1..40 {
            let w = PI * i as f64 / 40.0;
            let s = WaveSetting { a: 2.0 * PI / w, ..s };
            let m = dispersion_matrix(&s, ComplexValue::new(0.0, 0.0));
            let (b, c) = eigenvector_amplitudes(w).unwrap();
            for row in &m[1..] {
                let r = row[0] + row[1] * b + row[2] * c;
                let scale = row[0].norm() + (row[1] * b).norm() + (row[2] * c).norm();
                assert!(r.norm() < 1e-14 * scale);
            }
        }
    }

    #[test]
    fn determinant_vanishes_at_returned_value() {
        for mass in MassModel::ALL {
            for &(a, b, g) in &[(100.0, 100.0, 0.1), (10.0, 5.0, 0.01), (20.0, 60.0, 0.3)] {
                let s = setting(a, b, g, mass);
                let z = cos_numerical_wavenumber(&s).unwrap();
                let m = dispersion_matrix(&s, z);
                let scale: f64 = m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
                assert!(det3(&m).norm() < 1e-12 * scale.powi(3));
            }
        }
    }

    #[test]
    fn table_one_first_row() {
        let e = dispersion_errors(&setting(100.0, 100.0, 0.1, MassModel::Consistent)).unwrap();
        assert!((e.vel_err_pct - 0.01645).abs() < 5e-5);
        assert!((e.damp_err_pct.unwrap() + 0.016457).abs() < 5e-6);
        let e = dispersion_errors(&setting(100.0, 100.0, 0.1, MassModel::Lumped)).unwrap();
        assert!((e.vel_err_pct - 0.047467).abs() < 5e-6);
        assert!((e.damp_err_pct.unwrap() + 0.11211).abs() < 5e-5);
    }

    #[test]
    fn table_two_first_row() {
        let e = dispersion_errors(&setting(100.0, 50.0, 0.1, MassModel::Consistent)).unwrap();
        assert!((e.vel_err_pct + 0.030017).abs() < 5e-6);
        assert!((e.damp_err_pct.unwrap() - 0.12651).abs() < 5e-5);
        let e = dispersion_errors(&setting(100.0, 50.0, 0.1, MassModel::Lumped)).unwrap();
        assert!((e.vel_err_pct - 0.094048).abs() < 5e-6);
        assert!((e.damp_err_pct.unwrap() + 0.25609).abs() < 5e-5);
    }

    #[test]
    fn undamped_has_no_damping_error() {
        let e = dispersion_errors(&setting(100.0, 100.0, 0.0, MassModel::Consistent)).unwrap();
        assert!(e.damp_err_pct.is_none());
        assert!(e.vel_err_pct.is_finite());
    }

    #[test]
    fn second_order_convergence() {
        let e = |n: f64| {
            dispersion_errors(&setting(n, n, 0.1, MassModel::Consistent))
                .unwrap()
                .vel_err_pct
        };
        let ratio = e(100.0) / e(50.0);
        assert!((0.22..=0.28).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn unity_courant_insensitive_to_damping() {
        let e = |g: f64| {
            dispersion_errors(&setting(100.0, 100.0, g, MassModel::Consistent))
                .unwrap()
                .vel_err_pct
        };
        assert!((e(0.1) - e(0.001)).abs() < 2e-3);
    }

    /// Undamped FEM/Newmark relation derived independently: average
    /// acceleration maps ω to `(2/Δt) tan(ωΔt/2)` and the element stencil
    /// gives `cos kℓ = (1 − Ω M₁)/(1 + Ω M₂)` with `Ω = (ω_eff ℓ)²`.
    fn elastic_d(a: f64, b: f64, mass: MassModel) -> f64 {
        let w = 2.0 * a / b * (PI / a).tan();
        let om = w * w;
        ((1.0 - om * mass.m1()) / (1.0 + om * mass.m2())).acos()
    }

    #[test]
    fn continuous_in_damping() {
        for mass in MassModel::ALL {
            for &(a, b) in &[(100.0, 100.0), (10.0, 20.0), (50.0, 25.0)] {
                let d0 = elastic_d(a, b, mass);
                let e0 = 100.0 * (d0 * b - 2.0 * PI) / (d0 * b);
                let e = dispersion_errors(&setting(a, b, 1e-9, mass)).unwrap().vel_err_pct;
                let eu = dispersion_errors(&setting(a, b, 0.0, mass)).unwrap().vel_err_pct;
                assert!((eu - e0).abs() < 1e-10, "{mass} {a} {b}");
                assert!((e - e0).abs() < 1e-10, "{mass} {a} {b}");
            }
        }
    }

    #[test]
    fn round_trip_over_physical_settings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let s = setting(
                rng.gen_range(5.0..500.0),
                rng.gen_range(5.0..500.0),
                rng.gen_range(0.001..0.5),
                if rng.gen_bool(0.5) {
                    MassModel::Consistent
                } else {
                    MassModel::Lumped
                },
            );
            let w = numerical_wave(&s).unwrap();
            assert!(w.cos_bl.im <= 0.0);
            assert!(w.h >= 0.0 && (0.0..=PI).contains(&w.d));
            assert!((ccos(w.beta_l()) - w.cos_bl).norm() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn inversion_round_trips(dd in -3.0f64..3.0, ff in -3.0f64..3.0) {
            let z = ComplexValue::new(dd, ff);
            let (d, h) = invert_transcendental(z);
            prop_assert!((0.0..=PI).contains(&d));
            prop_assert!((ccos(ComplexValue::new(d, h)) - z).norm() <= 1e-12 * (1.0 + z.norm()));
        }

        #[test]
        fn forward_decay_in_physical_range(
            a in 2.5f64..1000.0, b in 2.5f64..1000.0, g in 0.0f64..1.0, lumped in any::<bool>()
        ) {
            let mass = if lumped { MassModel::Lumped } else { MassModel::Consistent };
            let w = numerical_wave(&setting(a, b, g, mass)).unwrap();
            prop_assert!(w.cos_bl.im <= 0.0);
            prop_assert!(w.h >= 0.0);
            prop_assert!((w.d.sin() * w.h.sinh() + w.cos_bl.im).abs() <= 1e-12);
        }
    }
}
