//! Tone-burst experiment on an assembled bar and the measurements taken from
//! probe time series.
//!
//! Every measurement is spectral: the carrier component `U = Σ u_k e^{iωkΔt}`
//! of a time-gated probe record. For a forward wave `U(x₂)/U(x₁) = e^{iβ(x₂−x₁)}`
//! holds exactly for the discrete scheme, so the ratio yields the numerical
//! wave number without reference to the closed forms. Gates are placed from
//! travel-time bounds and checked after the run.

use std::f64::consts::PI;
use std::io::Write;
use std::ops::Range;

use serde::Serialize;

use super::mesh::{assemble_with_boundary, BarMesh, Boundary};
use super::signal::{carrier_component, envelope, tone_burst, xcorr_delay};
use crate::complex::ComplexValue;
use crate::discretization::{Kinematics, NewmarkOperators};
use crate::dispersion::numerical_wave;
use crate::error::{Error, Result};
use crate::setting::{WaveSetting, OMEGA};

/// Default tone-burst length in carrier periods.
pub const DEFAULT_CYCLES: usize = 16;
/// Relative allowance on the travel-speed bounds used for gating.
pub const DEFAULT_SLACK: f64 = 0.1;
/// Periods appended to each gate after the nominal packet end.
pub const DEFAULT_TAIL: f64 = 2.0;
/// Largest gate-edge amplitude, relative to the gate peak, accepted as a
/// cleanly separated packet.
pub const EDGE_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub setting: WaveSetting,
    pub n_cycles: usize,
    pub total_steps: usize,
    /// The first two probes measure the incident wave; with an interface the
    /// reflection is read at the first one.
    pub probe_nodes: Vec<usize>,
    pub boundary: Boundary,
    pub slack: f64,
    pub tail_periods: f64,
}

/// Sample ranges over which each packet is demodulated.
#[derive(Debug, Clone, PartialEq)]
pub struct Gates {
    pub incident: [Range<usize>; 2],
    pub reflected: Option<Range<usize>>,
    /// Minimum number of samples the run must contain.
    pub required_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRecord {
    pub dt: f64,
    pub probe_nodes: Vec<usize>,
    /// Displacement history of each probe, one sample per time level.
    pub series: Vec<Vec<f64>>,
    /// Phase velocity ω / Re β from the spectral ratio of the two probes.
    pub measured_velocity: f64,
    /// Im β from the same ratio.
    pub measured_attenuation_per_length: f64,
    /// `100 |A_re|` read at the first probe, present with an interface.
    pub measured_reflection_pct: Option<f64>,
    /// Envelope delay speed between the two probes.
    pub group_velocity: Option<f64>,
    /// `½u̇ᵀMu̇ + ½uᵀKu` at every time level.
    pub energy: Vec<f64>,
    /// First level at which the driven node is held at rest.
    pub forcing_end_step: usize,
    /// Largest two-step Newmark residual over free nodes and steps.
    pub max_newmark_residual: f64,
}

/// Group velocity dω/d(Re β) of the numerical scheme, by central difference
/// in frequency at fixed Δt and ℓ. Used only to place gates.
pub fn estimated_group_velocity(s: &WaveSetting) -> Result<f64> {
    let eps = 1e-4;
    let k = |f: f64| -> Result<f64> {
        let shifted = WaveSetting {
            a: s.a / f,
            b: s.b / f,
            gamma: s.gamma * f,
            ..*s
        };
        Ok(numerical_wave(&shifted)?.d * s.b)
    };
    let dk = k(1.0 + eps)? - k(1.0 - eps)?;
    Ok(2.0 * eps * OMEGA / dk)
}

#[derive(Debug, Clone, Copy)]
struct SpeedBounds {
    fast: f64,
    slow: f64,
}

impl SpeedBounds {
    fn new(vg: f64, slack: f64) -> Self {
        SpeedBounds {
            fast: vg.max(1.0) * (1.0 + slack),
            slow: vg.min(1.0) * (1.0 - slack),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::MeasurementInvalid(msg.into())
}

fn round_half_up(x: f64) -> f64 {
    (2.0 * x).ceil() / 2.0
}

impl SimConfig {
    pub fn new(
        setting: WaveSetting,
        n_cycles: usize,
        total_steps: usize,
        probe_nodes: Vec<usize>,
        boundary: Boundary,
    ) -> Self {
        SimConfig {
            setting,
            n_cycles,
            total_steps,
            probe_nodes,
            boundary,
            slack: DEFAULT_SLACK,
            tail_periods: DEFAULT_TAIL,
        }
    }

    fn burst_periods(&self) -> f64 {
        self.n_cycles as f64
    }

    fn bounds(&self, s: &WaveSetting) -> Result<SpeedBounds> {
        Ok(SpeedBounds::new(estimated_group_velocity(s)?, self.slack))
    }

    /// Uniform bar with probes 2 and 6 wavelengths from the driven end and the
    /// fixed end far enough away that its echo misses both gates.
    pub fn uniform(setting: WaveSetting, n_cycles: usize) -> Result<(BarMesh, SimConfig)> {
        let s = WaveSetting { alpha: 1.0, ..setting };
        let mut cfg = SimConfig::new(s, n_cycles, 0, Vec::new(), Boundary::FixedFarEnd);
        let v = cfg.bounds(&s)?;
        let (x1, x2) = (2.0, 6.0);
        let tb = cfg.burst_periods();
        let end2 = tb + x2 / v.slow + cfg.tail_periods;
        let far = round_half_up((v.fast * (end2 + 1.0) + x2) / 2.0);
        let n = (far * s.b).ceil() as usize;
        let mesh = BarMesh::uniform(n, s.element_length(), s.mass)?;
        cfg.probe_nodes = vec![(x1 * s.b).round() as usize, (x2 * s.b).round() as usize];
        cfg.total_steps = cfg.gates(&mesh)?.required_steps;
        Ok((mesh, cfg))
    }

    /// Two-region bar with the interface far enough from the probes that the
    /// incident, reflected and secondary packets are separated in time.
    pub fn graded(setting: WaveSetting, n_cycles: usize) -> Result<(BarMesh, SimConfig)> {
        let s = setting;
        let mut cfg = SimConfig::new(s, n_cycles, 0, Vec::new(), Boundary::FixedFarEnd);
        let vl = cfg.bounds(&s)?;
        let vr = cfg.bounds(&s.right_side())?;
        let tb = cfg.burst_periods();
        let margin = tb + cfg.tail_periods + 1.0;
        let mut x1 = 2.0;
        let (x_i, x2) = loop {
            let x2 = x1 + 2.0;
            let x_i = round_half_up((vl.fast * (margin + x2 / vl.slow) + x2) / 2.0);
            let bounce = (2.0 * x_i + x1) / vl.fast;
            let refl_end = margin + (2.0 * x_i - x1) / vl.slow;
            if bounce >= refl_end {
                break (x_i, x2);
            }
            x1 += 0.5;
            if x1 > 1e4 {
                return Err(invalid("no probe layout separates the packets"));
            }
        };
        let refl_end = margin + (2.0 * x_i - x1) / vl.slow;
        // earliest far-end echo: x_I/v + 2R/v_R + (x_I − x₁)/v
        let right = round_half_up(0.5 * vr.fast * (refl_end - (2.0 * x_i - x1) / vl.fast)).max(2.0);
        let n_left = (x_i * s.b).round() as usize;
        let ell = s.element_length();
        let n_right = (right / (s.alpha * ell)).ceil() as usize;
        let mesh = BarMesh::graded(n_left, n_right, ell, s.alpha, s.mass)?;
        cfg.probe_nodes = vec![(x1 * s.b).round() as usize, (x2 * s.b).round() as usize];
        cfg.total_steps = cfg.gates(&mesh)?.required_steps;
        Ok((mesh, cfg))
    }

    /// Gate placement, or `MeasurementInvalid` if packets cannot be separated
    /// within this run.
    pub fn gates(&self, mesh: &BarMesh) -> Result<Gates> {
        self.setting.validate()?;
        if self.n_cycles == 0 {
            return Err(Error::domain("n_cycles", 0.0, "tone burst needs at least one cycle"));
        }
        if self.probe_nodes.len() < 2 {
            return Err(invalid("two probe nodes are required"));
        }
        let (p1, p2) = (self.probe_nodes[0], self.probe_nodes[1]);
        let limit = mesh.interface_node().unwrap_or(mesh.node_count() - 1);
        if !(0 < p1 && p1 < p2 && p2 < limit) {
            return Err(invalid(format!(
                "probes must satisfy 0 < {p1} < {p2} < {limit} (left of the interface or far end)"
            )));
        }
        let a = self.setting.a;
        let tb = self.burst_periods();
        let tau = self.tail_periods;
        let vl = self.bounds(&self.setting)?;
        let x1 = mesh.node_position(p1);
        let x2 = mesh.node_position(p2);
        let window = |start: f64, end: f64| (start * a).floor() as usize..(end * a).ceil() as usize + 1;
        let inc = |x: f64| (x / vl.fast, tb + x / vl.slow + tau);
        let (s1, e1) = inc(x1);
        let (s2, e2) = inc(x2);
        let mut required = e2;
        let far_x = mesh.node_position(mesh.node_count() - 1);
        let vr = if mesh.n_right > 0 {
            self.bounds(&WaveSetting {
                b: self.setting.b / mesh.alpha,
                alpha: 1.0,
                ..self.setting
            })?
        } else {
            vl
        };
        // travel time from the source to the far end and back to x
        let echo_at = |x: f64| -> f64 {
            match mesh.interface_node() {
                Some(j) => {
                    let xi = mesh.node_position(j);
                    (2.0 * xi - x) / vl.fast + 2.0 * (far_x - xi) / vr.fast
                }
                None => (2.0 * far_x - x) / vl.fast,
            }
        };
        let mut reflected = None;
        match mesh.interface_node() {
            Some(j) => {
                let xi = mesh.node_position(j);
                let rs = (2.0 * xi - x1) / vl.fast;
                let re = tb + (2.0 * xi - x1) / vl.slow + tau;
                let r2 = (2.0 * xi - x2) / vl.fast;
                if rs <= e1 || r2 <= e2 {
                    return Err(invalid(format!(
                        "packets overlap: interface reflection reaches the probes (t = {:.3}) before the \
                         incident burst has passed (t = {:.3}); shorten the burst or move the interface",
                        rs.min(r2),
                        e1.max(e2)
                    )));
                }
                let bounce = (2.0 * xi + x1) / vl.fast;
                if bounce <= re || echo_at(x1) <= re {
                    return Err(invalid(
                        "packets overlap: secondary reflections reach the probe before the \
                         interface reflection has passed",
                    ));
                }
                required = required.max(re);
                reflected = Some(window(rs, re));
            }
            None => {
                if echo_at(x2) <= e2 {
                    return Err(invalid(format!(
                        "packets overlap: far-end echo reaches probe {p2} (t = {:.3}) before the \
                         incident burst has passed (t = {:.3})",
                        echo_at(x2),
                        e2
                    )));
                }
            }
        }
        let required_steps = (required * a).ceil() as usize + 2;
        if self.total_steps != 0 && self.total_steps < required_steps {
            return Err(invalid(format!(
                "packets overlap the end of the record: {} steps requested but the burst needs \
                 {required_steps} to pass the probes",
                self.total_steps
            )));
        }
        Ok(Gates {
            incident: [window(s1, e1), window(s2, e2)],
            reflected,
            required_steps,
        })
    }

    /// `key=value` pairs describing the run, in a fixed order.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let s = &self.setting;
        let mut kv = vec![
            ("a".to_string(), s.a.to_string()),
            ("b".to_string(), s.b.to_string()),
            ("gamma".to_string(), s.gamma.to_string()),
            ("alpha".to_string(), s.alpha.to_string()),
            ("mass".to_string(), s.mass.to_string()),
            ("n_cycles".to_string(), self.n_cycles.to_string()),
            ("total_steps".to_string(), self.total_steps.to_string()),
            (
                "probe_nodes".to_string(),
                self.probe_nodes
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
        ];
        match self.boundary {
            Boundary::FixedFarEnd => kv.push(("boundary".into(), "fixed_far_end".into())),
            Boundary::AbsorbingPad { elements, max_gamma } => {
                kv.push(("boundary".into(), "absorbing_pad".into()));
                kv.push(("pad_elements".into(), elements.to_string()));
                kv.push(("pad_max_gamma".into(), max_gamma.to_string()));
            }
        }
        kv.push(("slack".into(), self.slack.to_string()));
        kv.push(("tail_periods".into(), self.tail_periods.to_string()));
        kv
    }
}

/// Integrate the burst through the bar and measure the probes.
pub fn run(mesh: &BarMesh, cfg: &SimConfig) -> Result<SimRecord> {
    let gates = cfg.gates(mesh)?;
    let total = if cfg.total_steps == 0 {
        gates.required_steps
    } else {
        cfg.total_steps
    };
    let s = &cfg.setting;
    let asm = assemble_with_boundary(mesh, s, cfg.boundary)?;
    let n = asm.node_count();
    if n < 3 {
        return Err(Error::domain("nodes", n as f64, "need at least one free node"));
    }
    let dt = s.dt();
    let ops = NewmarkOperators::new(dt)?;
    let keff = asm.m.combine(1.0, &asm.c, 0.5 * dt).combine(1.0, &asm.k, 0.25 * dt * dt);
    // free nodes are 1..n−1; node 0 is driven, node n−1 fixed
    let factor = keff.tail(1).head(n - 2).factor()?;

    let forcing_end = (cfg.n_cycles as f64 * s.a - 1e-9).ceil() as usize;
    let omega_dt = s.derived_groups().omega_dt;
    let mut u = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut acc = vec![0.0; n];
    let mut up = vec![0.0; n];
    let mut vp = vec![0.0; n];
    let mut work = vec![0.0; n];
    let mut rhs = vec![0.0; n];

    let mut probes: Vec<usize> = cfg.probe_nodes.clone();
    // neighbour of the first probe, used to unwrap the long-baseline phase
    probes.push(cfg.probe_nodes[0] + 1);
    let mut series = vec![Vec::with_capacity(total); probes.len()];
    let mut energy = Vec::with_capacity(total);
    let record = |u: &[f64], v: &[f64], series: &mut Vec<Vec<f64>>, energy: &mut Vec<f64>| {
        for (sr, &p) in series.iter_mut().zip(&probes) {
            sr.push(u[p]);
        }
        energy.push(0.5 * asm.m.quad(v) + 0.5 * asm.k.quad(u));
    };
    record(&u, &v, &mut series, &mut energy);

    let mut history: Vec<Vec<Kinematics>> = Vec::with_capacity(3);
    let snapshot = |u: &[f64], v: &[f64], a: &[f64]| -> Vec<Kinematics> {
        (1..n - 1).map(|j| Kinematics::new(u[j], v[j], a[j])).collect()
    };
    history.push(snapshot(&u, &v, &acc));
    let mut max_residual: f64 = 0.0;

    for step in 1..total {
        for j in 0..n {
            let (pu, pv) = ops.predict(Kinematics::new(u[j], v[j], acc[j]));
            up[j] = pu;
            vp[j] = pv;
        }
        let a0 = if step <= forcing_end {
            let target = tone_burst(step as f64 * dt, OMEGA, cfg.n_cycles as f64);
            4.0 * (target - up[0]) / (dt * dt)
        } else {
            up[0] = 0.0;
            vp[0] = 0.0;
            0.0
        };
        up[n - 1] = 0.0;
        vp[n - 1] = 0.0;
        asm.k.mul(&up, &mut rhs);
        asm.c.mul(&vp, &mut work);
        for j in 0..n {
            rhs[j] = -(rhs[j] + work[j]);
        }
        rhs[1] -= keff.get(1, 0) * a0;
        let free = &mut rhs[1..n - 1];
        factor.solve_in_place(free);
        acc[0] = a0;
        acc[1..n - 1].copy_from_slice(&rhs[1..n - 1]);
        acc[n - 1] = 0.0;
        for j in 0..n {
            let k = ops.correct(up[j], vp[j], acc[j]);
            u[j] = k.u;
            v[j] = k.v;
        }
        if !u.iter().all(|x| x.is_finite()) {
            return Err(invalid(format!("non-finite displacement at step {step}")));
        }
        record(&u, &v, &mut series, &mut energy);

        history.push(snapshot(&u, &v, &acc));
        if history.len() == 3 {
            for ((p, c), nx) in history[0].iter().zip(&history[1]).zip(&history[2]) {
                let (rv, rd) = ops.residuals(*p, *c, *nx);
                max_residual = max_residual.max((rv * dt).abs()).max(rd.abs());
            }
            history.remove(0);
        }
    }

    let aux = series.pop().expect("auxiliary probe");
    let m = measure(mesh, cfg, &gates, &series, &aux, omega_dt)?;
    Ok(SimRecord {
        dt,
        probe_nodes: cfg.probe_nodes.clone(),
        series,
        measured_velocity: m.velocity,
        measured_attenuation_per_length: m.attenuation,
        measured_reflection_pct: m.reflection_pct,
        group_velocity: m.group_velocity,
        energy,
        forcing_end_step: forcing_end + 1,
        max_newmark_residual: max_residual,
    })
}

struct Measurements {
    velocity: f64,
    attenuation: f64,
    reflection_pct: Option<f64>,
    group_velocity: Option<f64>,
}

fn clip(range: &Range<usize>, len: usize) -> Range<usize> {
    range.start.min(len)..range.end.min(len)
}

/// Peak magnitude of `series` over `gate`.
fn gate_peak(series: &[f64], gate: &Range<usize>) -> f64 {
    series[gate.clone()].iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Reject a gate whose first or last quarter period still carries more than
/// `EDGE_TOLERANCE · reference` of signal.
fn check_edges(series: &[f64], gate: &Range<usize>, per_period: usize, reference: f64, label: &str) -> Result<()> {
    let inside = &series[gate.clone()];
    if reference == 0.0 || inside.is_empty() {
        return Err(invalid(format!("{label}: no signal inside the gate")));
    }
    let w = (per_period / 4).min(inside.len() / 4).max(1);
    let edge = inside[..w]
        .iter()
        .chain(&inside[inside.len() - w..])
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if edge > EDGE_TOLERANCE * reference {
        return Err(invalid(format!(
            "{label}: packet not separated (edge amplitude {:.3e} of peak)",
            edge / reference
        )));
    }
    Ok(())
}

fn measure(
    mesh: &BarMesh,
    cfg: &SimConfig,
    gates: &Gates,
    series: &[Vec<f64>],
    aux: &[f64],
    omega_dt: f64,
) -> Result<Measurements> {
    let len = series[0].len();
    let per_period = (2.0 * PI / omega_dt).round() as usize;
    let g1 = clip(&gates.incident[0], len);
    let g2 = clip(&gates.incident[1], len);
    let peak1 = gate_peak(&series[0], &g1);
    check_edges(&series[0], &g1, per_period, peak1, "incident packet at first probe")?;
    let peak2 = gate_peak(&series[1], &g2);
    check_edges(&series[1], &g2, per_period, peak2, "incident packet at second probe")?;

    let u1 = carrier_component(&series[0], g1.clone(), omega_dt);
    let u2 = carrier_component(&series[1], g2.clone(), omega_dt);
    let ua = carrier_component(aux, g1.clone(), omega_dt);
    let (p1, p2) = (cfg.probe_nodes[0], cfg.probe_nodes[1]);
    let dx = mesh.node_position(p2) - mesh.node_position(p1);
    let dx_aux = mesh.node_position(p1 + 1) - mesh.node_position(p1);

    // one element apart the phase advance is below π and needs no unwrapping
    let k_rough = (ua / u1).arg().rem_euclid(2.0 * PI) / dx_aux;
    let ratio: ComplexValue = u2 / u1;
    let wrapped = ratio.arg();
    let turns = ((k_rough * dx - wrapped) / (2.0 * PI)).round();
    let k_re = (wrapped + 2.0 * PI * turns) / dx;
    let k_im = -ratio.norm().ln() / dx;
    if !(k_re > 0.0) {
        return Err(invalid("no forward phase advance between the probes"));
    }

    let reflection_pct = match &gates.reflected {
        Some(gr) => {
            let gr = clip(gr, len);
            check_edges(&series[0], &gr, per_period, peak1, "reflected packet at first probe")?;
            let ur = carrier_component(&series[0], gr, omega_dt);
            let j = mesh.interface_node().expect("reflection gate implies an interface");
            let path = 2.0 * (mesh.node_position(j) - mesh.node_position(p1));
            Some(100.0 * (ur / u1).norm() * (k_im * path).exp())
        }
        None => None,
    };

    let env1 = envelope(&series[0], omega_dt);
    let env2 = envelope(&series[1], omega_dt);
    let group_velocity = xcorr_delay(&env1[g1.clone()], &env2[g1.start..g2.end], g2.end - g1.start)
        .filter(|lag| *lag > 0.0)
        .map(|lag| dx / (lag * cfg.setting.dt()));

    Ok(Measurements {
        velocity: OMEGA / k_re,
        attenuation: k_im,
        reflection_pct,
        group_velocity,
    })
}

/// Probe histories as CSV: a `#` line of `key=value` pairs, a header
/// `time,probe_<node>,…`, then one row per time level.
pub fn write_series_csv<W: Write>(mut w: W, cfg: &SimConfig, rec: &SimRecord) -> std::io::Result<()> {
    let kv: Vec<String> = cfg.key_values().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(w, "# {}", kv.join(" "))?;
    let header: Vec<String> = rec.probe_nodes.iter().map(|p| format!("probe_{p}")).collect();
    writeln!(w, "time,{}", header.join(","))?;
    let len = rec.series.first().map_or(0, Vec::len);
    for k in 0..len {
        write!(w, "{}", k as f64 * rec.dt)?;
        for sr in &rec.series {
            write!(w, ",{}", sr[k])?;
        }
        writeln!(w)?;
    }
    Ok(())
}
