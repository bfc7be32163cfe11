//! Two-node bar element, the interior nodal stencil it assembles to, and the
//! two-step form of Newmark's average-acceleration method.

use crate::error::{Error, Result};
use crate::setting::WaveSetting;

pub type Mat2 = [[f64; 2]; 2];

/// Element matrices of a two-node bar with stiffness-proportional damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementMatrices {
    pub k: Mat2,
    pub c: Mat2,
    pub m: Mat2,
}

pub fn element_matrices(
    mass: crate::setting::MassModel,
    length: f64,
    e_mod: f64,
    density: f64,
    damping_c: f64,
) -> Result<ElementMatrices> {
    if !(length > 0.0) {
        return Err(Error::domain("length", length, "element length must be positive"));
    }
    if !(e_mod > 0.0) {
        return Err(Error::domain("e_mod", e_mod, "modulus must be positive"));
    }
    if !(density > 0.0) {
        return Err(Error::domain("density", density, "density must be positive"));
    }
    if !(damping_c >= 0.0) {
        return Err(Error::domain("damping_c", damping_c, "damping must be non-negative"));
    }
    let ks = e_mod / length;
    let k = [[ks, -ks], [-ks, ks]];
    let c = [[damping_c * ks, -damping_c * ks], [-damping_c * ks, damping_c * ks]];
    let ms = density * length;
    let (m1, m2) = (mass.m1(), mass.m2());
    let m = [[ms * m1, ms * m2], [ms * m2, ms * m1]];
    Ok(ElementMatrices { k, c, m })
}

/// Equilibrium residual of an interior node of a uniform mesh, divided by E/ℓ:
///
/// `{−u₋ + 2u − u₊} + c{−u̇₋ + 2u̇ − u̇₊} + (ρℓ²/E){M₂ü₋ + 2M₁ü + M₂ü₊}`
///
/// in the normalized units (E = ρ = 1, ℓ = 1/b, c = γ/π).
pub fn stencil_residual(u: [f64; 3], u_dot: [f64; 3], u_ddot: [f64; 3], s: &WaveSetting) -> f64 {
    let ell = s.element_length();
    let (m1, m2) = (s.mass.m1(), s.mass.m2());
    let lap = |v: [f64; 3]| -v[0] + 2.0 * v[1] - v[2];
    lap(u)
        + s.damping_c() * lap(u_dot)
        + ell * ell * (m2 * u_ddot[0] + 2.0 * m1 * u_ddot[1] + m2 * u_ddot[2])
}

/// Displacement, velocity and acceleration of one node at one time level.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Kinematics {
    pub u: f64,
    pub v: f64,
    pub a: f64,
}

impl Kinematics {
    pub const REST: Kinematics = Kinematics {
        u: 0.0,
        v: 0.0,
        a: 0.0,
    };

    pub fn new(u: f64, v: f64, a: f64) -> Self {
        Kinematics { u, v, a }
    }
}

/// Newmark average acceleration (β = 1/4, γ_N = 1/2) for a constant step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewmarkOperators {
    dt: f64,
}

impl NewmarkOperators {
    pub fn new(dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::domain("dt", dt, "time increment must be positive"));
        }
        Ok(NewmarkOperators { dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Two-step residuals over levels k−1, k, k+1:
    ///
    /// * velocity: `u̇₊ − 2u̇ + u̇₋ + (Δt/2)(ü₋ − ü₊)`
    /// * displacement: `u₊ − 2u + u₋ − (Δt²/4)(ü₋ + 2ü + ü₊)`
    pub fn residuals(&self, prev: Kinematics, curr: Kinematics, next: Kinematics) -> (f64, f64) {
        let dt = self.dt;
        let r_vel = next.v - 2.0 * curr.v + prev.v + 0.5 * dt * (prev.a - next.a);
        let r_disp = next.u - 2.0 * curr.u + prev.u - 0.25 * dt * dt * (prev.a + 2.0 * curr.a + next.a);
        (r_vel, r_disp)
    }

    /// Predictor `(ũ, ṽ)` of the one-step form; the corrected state is
    /// `u = ũ + (Δt²/4) ü`, `v = ṽ + (Δt/2) ü`.
    pub fn predict(&self, k: Kinematics) -> (f64, f64) {
        let dt = self.dt;
        (k.u + dt * k.v + 0.25 * dt * dt * k.a, k.v + 0.5 * dt * k.a)
    }

    pub fn correct(&self, u_pred: f64, v_pred: f64, acc: f64) -> Kinematics {
        let dt = self.dt;
        Kinematics {
            u: u_pred + 0.25 * dt * dt * acc,
            v: v_pred + 0.5 * dt * acc,
            a: acc,
        }
    }

    /// Acceleration that makes a prescribed displacement `u_next` consistent
    /// with the one-step update from `k`.
    pub fn prescribed(&self, k: Kinematics, u_next: f64) -> Kinematics {
        let (u_pred, v_pred) = self.predict(k);
        let acc = 4.0 * (u_next - u_pred) / (self.dt * self.dt);
        self.correct(u_pred, v_pred, acc)
    }
}

pub fn newmark_residuals(
    prev: Kinematics,
    curr: Kinematics,
    next: Kinematics,
    dt: f64,
) -> Result<(f64, f64)> {
    Ok(NewmarkOperators::new(dt)?.residuals(prev, curr, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ComplexValue, I};
    use crate::dispersion::{eigenvector_amplitudes, numerical_wave};
    use crate::setting::MassModel;

    #[test]
    fn consistent_unit_element() {
        let em = element_matrices(MassModel::Consistent, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(em.m, [[1.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 1.0 / 3.0]]);
        assert_eq!(em.c, [[0.0, -0.0], [-0.0, 0.0]]);
    }

    #[test]
    fn lumped_long_element() {
        let em = element_matrices(MassModel::Lumped, 2.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(em.m, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn damping_is_proportional() {
        let em = element_matrices(MassModel::Consistent, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert_eq!(em.c, [[0.5, -0.5], [-0.5, 0.5]]);
    }

    #[test]
    fn element_invariants() {
        for mass in MassModel::ALL {
            let em = element_matrices(mass, 0.3, 2.0, 5.0, 0.1).unwrap();
            for row in em.m {
                assert!((row[0] + row[1] - 5.0 * 0.3 / 2.0).abs() < 1e-15);
            }
            for mat in [em.k, em.c, em.m] {
                assert_eq!(mat[0][1], mat[1][0]);
            }
        }
    }

    #[test]
    fn element_rejects_bad_input() {
        assert!(element_matrices(MassModel::Lumped, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(element_matrices(MassModel::Lumped, 1.0, -1.0, 1.0, 0.0).is_err());
        assert!(element_matrices(MassModel::Lumped, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(element_matrices(MassModel::Lumped, 1.0, 1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn stencil_matches_assembled_middle_row() {
        let s = WaveSetting::new(37.0, 23.0, 0.05, MassModel::Consistent).unwrap();
        let ell = s.element_length();
        let em = element_matrices(s.mass, ell, 1.0, 1.0, s.damping_c()).unwrap();
        // middle row of two assembled elements, scaled by ℓ/E
        let row = |m: Mat2| [m[1][0] * ell, (m[1][1] + m[0][0]) * ell, m[0][1] * ell];
        let (kr, cr, mr) = (row(em.k), row(em.c), row(em.m));
        for j in 0..3 {
            let mut e = [0.0; 3];
            e[j] = 1.0;
            let z = [0.0; 3];
            assert!((stencil_residual(e, z, z, &s) - kr[j]).abs() < 1e-12);
            assert!((stencil_residual(z, e, z, &s) - cr[j]).abs() < 1e-12);
            assert!((stencil_residual(z, z, e, &s) - mr[j]).abs() < 1e-15);
        }
    }

    #[test]
    fn stencil_trivial_states() {
        let s = WaveSetting::new(20.0, 20.0, 0.1, MassModel::Lumped).unwrap();
        assert_eq!(stencil_residual([0.0; 3], [0.0; 3], [0.0; 3], &s), 0.0);
        assert_eq!(stencil_residual([1.0; 3], [0.0; 3], [0.0; 3], &s), 0.0);
    }

    /// Real part of the plane wave `e^{i(β_n jℓ − ωkΔt)}` with amplitudes from
    /// the dispersion module, sampled at nodes j−1, j, j+1.
    fn plane_wave_nodes(s: &WaveSetting, j: f64, k: f64) -> ([f64; 3], [f64; 3], [f64; 3]) {
        let wave = numerical_wave(s).unwrap();
        let g = s.derived_groups();
        let dt = s.dt();
        let beta_l = ComplexValue::new(wave.d, wave.h);
        let mut u = [0.0; 3];
        let mut v = [0.0; 3];
        let mut a = [0.0; 3];
        for (n, jj) in [j - 1.0, j, j + 1.0].into_iter().enumerate() {
            let phase = (I * (beta_l * jj - g.omega_dt * k)).exp();
            u[n] = phase.re;
            v[n] = (wave.amp_vel * phase).re / dt;
            a[n] = (wave.amp_acc * phase).re / (dt * dt);
        }
        (u, v, a)
    }

    #[test]
    fn plane_wave_annihilates_stencil() {
        for mass in MassModel::ALL {
            for &(a, b, gamma) in &[(100.0, 100.0, 0.1), (20.0, 10.0, 0.01), (10.0, 20.0, 0.5)] {
                let s = WaveSetting::new(a, b, gamma, mass).unwrap();
                let (u, v, acc) = plane_wave_nodes(&s, 7.0, 3.0);
                let r = stencil_residual(u, v, acc, &s);
                assert!(r.abs() < 1e-10, "{mass} a={a} b={b}: {r}");
            }
        }
    }

    #[test]
    fn newmark_exact_for_rest_and_linear_motion() {
        let ops = NewmarkOperators::new(0.01).unwrap();
        let st = Kinematics::new(1.0, 0.0, 0.0);
        assert_eq!(ops.residuals(st, st, st), (0.0, 0.0));
        let dt = 0.01;
        let lin = |k: f64| Kinematics::new(k * dt, 1.0, 0.0);
        let (rv, rd) = ops.residuals(lin(4.0), lin(5.0), lin(6.0));
        assert!(rv.abs() < 1e-15 && rd.abs() < 1e-15);
    }

    #[test]
    fn harmonic_eigenvector_annihilates_newmark() {
        for i in 1..50 {
            let omega_dt = std::f64::consts::PI * i as f64 / 50.0;
            let dt = 0.1;
            let (bv, ca) = eigenvector_amplitudes(omega_dt).unwrap();
            let level = |k: f64| {
                let p = (-I * omega_dt * k).exp();
                let u = p;
                let v = bv * p / dt;
                let a = ca * p / (dt * dt);
                (
                    Kinematics::new(u.re, v.re, a.re),
                    Kinematics::new(u.im, v.im, a.im),
                )
            };
            let ops = NewmarkOperators::new(dt).unwrap();
            let (p0, q0) = level(2.0);
            let (p1, q1) = level(3.0);
            let (p2, q2) = level(4.0);
            for (rv, rd) in [ops.residuals(p0, p1, p2), ops.residuals(q0, q1, q2)] {
                assert!(rv.abs() < 1e-12 / dt, "omega_dt={omega_dt}: {rv}");
                assert!(rd.abs() < 1e-12, "omega_dt={omega_dt}: {rd}");
            }
        }
    }

    #[test]
    fn one_step_form_satisfies_two_step_relations() {
        let ops = NewmarkOperators::new(0.05).unwrap();
        // single oscillator ü + 4u = 0 stepped in one-step form
        let mut hist = vec![Kinematics::new(1.0, 0.0, -4.0)];
        for _ in 0..20 {
            let k = *hist.last().unwrap();
            let (up, vp) = ops.predict(k);
            let acc = -4.0 * up / (1.0 + 4.0 * 0.25 * 0.05 * 0.05);
            hist.push(ops.correct(up, vp, acc));
        }
        for w in hist.windows(3) {
            let (rv, rd) = ops.residuals(w[0], w[1], w[2]);
            assert!(rv.abs() < 1e-14 && rd.abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_positive_step() {
        assert!(NewmarkOperators::new(0.0).is_err());
        assert!(newmark_residuals(Kinematics::REST, Kinematics::REST, Kinematics::REST, -1.0).is_err());
    }
}
