//! Self-describing report rows for point evaluations, curves, table
//! reproductions and simulator runs.

pub mod fixtures;
pub mod format;

use serde::Serialize;

use crate::dispersion::{dispersion_errors, numerical_wave};
use crate::error::Result;
use crate::reflection::{reflection_amplitude, reflection_amplitude_with, InterfaceMassTerm};
use crate::setting::{MassModel, WaveSetting, OMEGA};
use crate::simulator::{BarMesh, SimConfig, SimRecord};
use fixtures::{PrintedCell, PrintedColumn, Quantity, TABLE1, TABLE1_SUSPECT, TABLE2, TABLE3};
use format::{Field, Row};

pub use format::{format_g, write_csv, write_json_array, write_json_lines};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// γ used for Table 2, which does not state one.
pub const TABLE2_GAMMA: f64 = 0.1;
/// γ used for Table 3, which does not state one.
pub const TABLE3_GAMMA: f64 = 0.01;
/// Damping values reported alongside Tables 2 and 3.
pub const SENSITIVITY_GAMMAS: [f64; 3] = [0.1, 0.01, 0.001];

/// Comment-line text identifying the tool and the unit system.
pub fn metadata(extra: &str) -> String {
    let base = format!(
        "viscowave {VERSION}; normalization omega=2*pi T=1 v_r=1 lambda=1 dt=1/a ell=1/b c=gamma/pi"
    );
    if extra.is_empty() {
        base
    } else {
        format!("{base}; {extra}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Simulated,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::Simulated => "simulated",
        }
    }
}

/// Inputs and outputs of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub mass: MassModel,
    pub vel_err_pct: Option<f64>,
    pub damp_err_pct: Option<f64>,
    pub reflection_pct: Option<f64>,
    pub d: Option<f64>,
    pub h: Option<f64>,
    pub provenance: Provenance,
}

impl ReportRow {
    /// Dispersion errors and wave number of a uniform mesh.
    pub fn dispersion(s: &WaveSetting) -> Result<Self> {
        let e = dispersion_errors(s)?;
        let w = numerical_wave(s)?;
        Ok(ReportRow {
            a: s.a,
            b: s.b,
            gamma: s.gamma,
            alpha: s.alpha,
            mass: s.mass,
            vel_err_pct: Some(e.vel_err_pct),
            damp_err_pct: e.damp_err_pct,
            reflection_pct: None,
            d: Some(w.d),
            h: Some(w.h),
            provenance: Provenance::ClosedForm,
        })
    }

    /// Interface reflection plus the left-mesh dispersion quantities.
    pub fn reflection(s: &WaveSetting) -> Result<Self> {
        let r = reflection_amplitude(s)?;
        Ok(ReportRow {
            reflection_pct: Some(r.magnitude_pct),
            ..Self::dispersion(s)?
        })
    }

    pub fn setting(&self) -> Result<WaveSetting> {
        WaveSetting::with_alpha(self.a, self.b, self.gamma, self.mass, self.alpha)
    }

    pub fn to_fields(&self) -> Row {
        vec![
            Field::input("a", self.a),
            Field::input("b", self.b),
            Field::input("gamma", self.gamma),
            Field::input("alpha", self.alpha),
            Field::text("mass", self.mass.name()),
            Field::maybe("vel_err_pct", self.vel_err_pct),
            Field::maybe("damp_err_pct", self.damp_err_pct),
            Field::maybe("reflection_pct", self.reflection_pct),
            Field::maybe("d", self.d),
            Field::maybe("h", self.h),
            Field::text("provenance", self.provenance.name()),
        ]
    }
}

/// The masses selected by a `consistent | lumped | both` choice.
pub fn masses(choice: Option<MassModel>) -> Vec<MassModel> {
    choice.map_or(MassModel::ALL.to_vec(), |m| vec![m])
}

fn geometric(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (points - 1) as f64;
    (0..points).map(|i| lo * (r * i as f64).exp()).collect()
}

fn linear(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Dispersion errors along `b = courant · a` for `a` spaced geometrically.
pub fn dispersion_curve(
    gamma: f64,
    courant: f64,
    a_min: f64,
    a_max: f64,
    points: usize,
    masses: &[MassModel],
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for a in geometric(a_min, a_max, points) {
        for &m in masses {
            rows.push(ReportRow::dispersion(&WaveSetting::new(a, courant * a, gamma, m)?)?);
        }
    }
    Ok(rows)
}

/// Reflection magnitude for `α` spaced linearly.
pub fn reflection_curve(
    a: f64,
    b: f64,
    gamma: f64,
    alpha_min: f64,
    alpha_max: f64,
    points: usize,
    masses: &[MassModel],
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for alpha in linear(alpha_min, alpha_max, points) {
        for &m in masses {
            rows.push(ReportRow::reflection(&WaveSetting::with_alpha(a, b, gamma, m, alpha)?)?);
        }
    }
    Ok(rows)
}

/// Computed counterpart of a printed cell, at damping `gamma` where the table
/// does not fix it.
pub fn computed_for(cell: &PrintedCell, gamma: f64) -> Result<f64> {
    match cell.table {
        1 | 2 => {
            let r = if cell.table == 1 {
                TABLE1[cell.row]
            } else {
                TABLE2[cell.row]
            };
            let s = WaveSetting::new(r.a, r.b, r.gamma.unwrap_or(gamma), cell.mass)?;
            let e = dispersion_errors(&s)?;
            Ok(match cell.column.mapped().0 {
                Quantity::VelErr => e.vel_err_pct,
                Quantity::DampErr => e.damp_err_pct.unwrap_or(f64::NAN),
                Quantity::Reflection => f64::NAN,
            })
        }
        _ => {
            let r = TABLE3[cell.row];
            let s = WaveSetting::with_alpha(r.a, r.a, gamma, cell.mass, r.alpha)?;
            Ok(reflection_amplitude(&s)?.magnitude_pct)
        }
    }
}

/// Printed value converted to the computed quantity's definition.
pub fn mapped_printed(cell: &PrintedCell) -> f64 {
    cell.column.mapped().1 * cell.printed
}

fn deviation_fields(prefix: &str, suffix: &str, computed: f64, printed: f64) -> Vec<Field> {
    let dev = computed - printed;
    vec![
        Field::output(format!("{prefix}_{suffix}"), computed),
        Field::output(format!("printed_{prefix}_{suffix}"), printed),
        Field::output(format!("{prefix}_abs_dev_{suffix}"), dev),
        Field::output(format!("{prefix}_rel_dev_{suffix}"), dev / printed.abs()),
    ]
}

fn error_table(table: u8) -> Result<Vec<Row>> {
    let rows: &[fixtures::ErrorRow] = if table == 1 { &TABLE1 } else { &TABLE2 };
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let gamma = r.gamma.unwrap_or(TABLE2_GAMMA);
        let mut row = vec![
            Field::count("table", table as u64),
            Field::count("row", i as u64 + 1),
            Field::input("a", r.a),
            Field::input("b", r.b),
            Field::input("gamma", gamma),
        ];
        let mut notes = Vec::new();
        for m in MassModel::ALL {
            let s = WaveSetting::new(r.a, r.b, gamma, m)?;
            let e = dispersion_errors(&s)?;
            let w = numerical_wave(&s)?;
            let printed_vel = r.printed(PrintedColumn::Damping, m);
            let printed_damp = -r.printed(PrintedColumn::Velocity, m);
            row.extend(deviation_fields("vel_err", m.name(), e.vel_err_pct, printed_vel));
            row.extend(deviation_fields(
                "damp_err",
                m.name(),
                e.damp_err_pct.unwrap_or(f64::NAN),
                printed_damp,
            ));
            row.push(Field::output(format!("d_{m}"), w.d));
            row.push(Field::output(format!("h_{m}"), w.h));
            if r.gamma.is_none() {
                for g in SENSITIVITY_GAMMAS {
                    let e = dispersion_errors(&WaveSetting::new(r.a, r.b, g, m)?)?;
                    row.push(Field::output(format!("vel_err_{m}_gamma_{g}"), e.vel_err_pct));
                    row.push(Field::maybe(format!("damp_err_{m}_gamma_{g}"), e.damp_err_pct));
                }
            }
            if table == 1 && (i, PrintedColumn::Damping, m) == TABLE1_SUSPECT {
                notes.push(format!(
                    "printed {m} cell {} does not follow its gamma neighbours; computed value kept",
                    r.printed(PrintedColumn::Damping, m)
                ));
            }
        }
        row.push(Field::text("note", notes.join("; ")));
        out.push(row);
    }
    Ok(out)
}

fn reflection_table() -> Result<Vec<Row>> {
    let mut out = Vec::new();
    for (i, r) in TABLE3.iter().enumerate() {
        let b_right = r.a / r.alpha;
        let mut row = vec![
            Field::count("table", 3),
            Field::count("row", i as u64 + 1),
            Field::input("a", r.a),
            Field::input("b", r.a),
            Field::input("alpha", r.alpha),
            Field::input("gamma", TABLE3_GAMMA),
            Field::output("b_right", b_right),
            Field::output("printed_b_right", r.b_right),
        ];
        for m in MassModel::ALL {
            let s = WaveSetting::with_alpha(r.a, r.a, TABLE3_GAMMA, m, r.alpha)?;
            let value = reflection_amplitude(&s)?.magnitude_pct;
            row.extend(deviation_fields("reflection", m.name(), value, r.printed(m)));
            let alt = reflection_amplitude_with(&s, InterfaceMassTerm::AsPrinted)?.magnitude_pct;
            row.push(Field::output(format!("reflection_node_mass_1_plus_inv_alpha_{m}"), alt));
            for g in SENSITIVITY_GAMMAS {
                let sg = WaveSetting { gamma: g, ..s };
                row.push(Field::output(
                    format!("reflection_{m}_gamma_{g}"),
                    reflection_amplitude(&sg)?.magnitude_pct,
                ));
            }
        }
        let note = if (r.b_right - b_right).abs() > 5e-4 * b_right {
            format!("printed right mesh parameter {} differs from a/alpha", r.b_right)
        } else {
            String::new()
        };
        row.push(Field::text("note", note));
        out.push(row);
    }
    Ok(out)
}

/// Rows reproducing published table `which` (1, 2 or 3), computed values next
/// to the printed ones.
pub fn table_rows(which: u8) -> Result<Vec<Row>> {
    match which {
        1 | 2 => error_table(which),
        _ => reflection_table(),
    }
}

/// Comment text for a table: damping choice and column mapping.
pub fn table_metadata(which: u8) -> String {
    let detail = match which {
        1 => "table 1; printed_vel_err = printed damping column, printed_damp_err = -(printed velocity column)".to_string(),
        2 => format!(
            "table 2 at gamma={TABLE2_GAMMA}; printed_vel_err = printed damping column, printed_damp_err = -(printed velocity column)"
        ),
        _ => format!("table 3 at gamma={TABLE3_GAMMA}; b_right = b/alpha"),
    };
    metadata(&detail)
}

/// Measured quantities of a run next to the closed-form predictions.
pub fn simulation_row(mesh: &BarMesh, cfg: &SimConfig, rec: &SimRecord) -> Result<Row> {
    let s = &cfg.setting;
    let left = WaveSetting { alpha: 1.0, ..*s };
    let w = numerical_wave(&left)?;
    let v_cf = OMEGA / (w.d * s.b);
    let att_cf = w.h * s.b;
    let rel = |m: f64, c: f64| if c != 0.0 { (m - c) / c } else { m - c };
    let mut row = vec![
        Field::input("a", s.a),
        Field::input("b", s.b),
        Field::input("gamma", s.gamma),
        Field::input("alpha", mesh.alpha),
        Field::text("mass", s.mass.name()),
        Field::count("n_cycles", cfg.n_cycles as u64),
        Field::count("total_steps", rec.energy.len() as u64),
        Field::count("nodes", mesh.node_count() as u64),
        Field::output("measured_velocity", rec.measured_velocity),
        Field::output("closed_form_velocity", v_cf),
        Field::output("velocity_rel_dev", rel(rec.measured_velocity, v_cf)),
        Field::output("measured_attenuation", rec.measured_attenuation_per_length),
        Field::output("closed_form_attenuation", att_cf),
        Field::output(
            "attenuation_rel_dev",
            rel(rec.measured_attenuation_per_length, att_cf),
        ),
    ];
    match (rec.measured_reflection_pct, mesh.interface_node()) {
        (Some(meas), Some(_)) => {
            let cf = reflection_amplitude(&WaveSetting {
                alpha: mesh.alpha,
                ..*s
            })?
            .magnitude_pct;
            row.push(Field::output("measured_reflection_pct", meas));
            row.push(Field::output("closed_form_reflection_pct", cf));
            row.push(Field::output("reflection_abs_dev", meas - cf));
        }
        _ => {
            row.push(Field::maybe("measured_reflection_pct", None));
            row.push(Field::maybe("closed_form_reflection_pct", None));
            row.push(Field::maybe("reflection_abs_dev", None));
        }
    }
    row.push(Field::maybe("group_velocity", rec.group_velocity));
    row.push(Field::output("max_newmark_residual", rec.max_newmark_residual));
    row.push(Field::text("provenance", Provenance::Simulated.name()));
    Ok(row)
}
