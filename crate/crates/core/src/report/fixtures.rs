//! Printed values of the three published tables.
//!
//! Tables 1 and 2 print two error columns headed "damping" and "velocity".
//! Under the error definitions used by [`crate::dispersion_errors`] the
//! "damping" column equals the velocity error and the "velocity" column equals
//! the negated damping error; [`PrintedColumn::mapped`] applies that mapping.

use crate::setting::MassModel;

/// Column of a published table, named by its printed heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintedColumn {
    /// "RELATIVE NUMERICAL DAMPING ERROR %".
    Damping,
    /// "RELATIVE NUMERICAL WAVE VELOCITY ERROR %".
    Velocity,
    /// "SPURIOUS REFLECTIONS %".
    Reflection,
}

/// Computed quantity a printed column corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    VelErr,
    DampErr,
    Reflection,
}

impl PrintedColumn {
    pub fn name(self) -> &'static str {
        match self {
            PrintedColumn::Damping => "damping",
            PrintedColumn::Velocity => "velocity",
            PrintedColumn::Reflection => "reflection",
        }
    }

    /// The computed quantity and the sign that turns the printed value into it.
    pub fn mapped(self) -> (Quantity, f64) {
        match self {
            PrintedColumn::Damping => (Quantity::VelErr, 1.0),
            PrintedColumn::Velocity => (Quantity::DampErr, -1.0),
            PrintedColumn::Reflection => (Quantity::Reflection, 1.0),
        }
    }
}

/// One printed number and where it sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedCell {
    pub table: u8,
    /// Zero-based row within the table.
    pub row: usize,
    pub column: PrintedColumn,
    pub mass: MassModel,
    pub printed: f64,
}

impl PrintedCell {
    pub fn coordinates(&self) -> String {
        format!("T{}:r{}:{}:{}", self.table, self.row + 1, self.column.name(), self.mass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub a: f64,
    pub b: f64,
    /// Damping stated with the row; `None` where the table leaves it out.
    pub gamma: Option<f64>,
    /// `[consistent, lumped]` under the "damping" heading.
    pub damping: [f64; 2],
    /// `[consistent, lumped]` under the "velocity" heading.
    pub velocity: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionRow {
    pub a: f64,
    pub alpha: f64,
    /// Right-mesh parameter as printed.
    pub b_right: f64,
    /// `[consistent, lumped]`.
    pub reflection: [f64; 2],
}

const fn t1(a: f64, gamma: f64, damping: [f64; 2], velocity: [f64; 2]) -> ErrorRow {
    ErrorRow {
        a,
        b: a,
        gamma: Some(gamma),
        damping,
        velocity,
    }
}

const fn t2(a: f64, b: f64, damping: [f64; 2], velocity: [f64; 2]) -> ErrorRow {
    ErrorRow {
        a,
        b,
        gamma: None,
        damping,
        velocity,
    }
}

const fn t3(a: f64, alpha: f64, b_right: f64, reflection: [f64; 2]) -> ReflectionRow {
    ReflectionRow {
        a,
        alpha,
        b_right,
        reflection,
    }
}

pub const TABLE1: [ErrorRow; 15] = [
    t1(100.0, 0.1, [0.01645, 0.04747], [0.01646, 0.1121]),
    t1(100.0, 0.01, [0.01645, 0.04934], [0.01646, 0.1153]),
    t1(100.0, 0.001, [0.01645, 0.04936], [0.01669, 0.1158]),
    t1(50.0, 0.1, [0.06582, 0.1900], [0.06592, 0.4500]),
    t1(50.0, 0.01, [0.06582, 0.1975], [0.06593, 0.4627]),
    t1(50.0, 0.001, [0.06582, 0.1976], [0.06592, 0.4628]),
    t1(25.0, 0.1, [0.2635, 0.7620], [0.2652, 1.825]),
    t1(25.0, 0.01, [0.2635, 0.7924], [0.2654, 1.878]),
    t1(25.0, 0.001, [0.2635, 0.7927], [0.2654, 1.878]),
    t1(20.0, 0.1, [0.4119, 1.193], [0.4161, 2.883]),
    t1(20.0, 0.01, [0.4121, 1.241], [0.4166, 2.967]),
    t1(20.0, 0.001, [0.4121, 1.241], [0.4166, 2.968]),
    t1(10.0, 0.1, [1.657, 4.857], [1.731, 12.68]),
    t1(10.0, 0.01, [1.660, 5.065], [1.740, 13.10]),
    t1(10.0, 0.001, [1.660, 5.967], [1.740, 13.10]),
];

/// Printed cell that disagrees with its neighbours in γ: the lumped entry of
/// the last Table 1 row under the "damping" heading.
pub const TABLE1_SUSPECT: (usize, PrintedColumn, MassModel) = (14, PrintedColumn::Damping, MassModel::Lumped);

pub const TABLE2: [ErrorRow; 8] = [
    t2(100.0, 50.0, [-0.030002, 0.09405], [-0.1265, 0.2561]),
    t2(50.0, 100.0, [0.1123, 0.1434], [0.2094, 0.3054]),
    t2(50.0, 25.0, [-0.1195, 0.3772], [-0.5021, 1.034]),
    t2(25.0, 50.0, [0.4495, 0.574], [0.8419, 1.232]),
    t2(20.0, 10.0, [-0.7238, 2.403], [-2.971, 6.944]),
    t2(10.0, 20.0, [2.818, 3.617], [5.453, 8.176]),
    t2(10.0, 5.0, [-2.566, 10.42], [-9.724, 38.43]),
    t2(5.0, 10.0, [11.39, 14.93], [24.98, 41.88]),
];

pub const TABLE3: [ReflectionRow; 18] = [
    t3(100.0, 0.5, 200.0, [1.845, 1.845]),
    t3(100.0, 0.7, 142.9, [1.397, 1.397]),
    t3(100.0, 0.9, 111.1, [0.5740, 0.5753]),
    t3(100.0, 1.1, 90.91, [0.6966, 0.6937]),
    t3(100.0, 1.5, 66.67, [4.868, 4.860]),
    t3(100.0, 2.0, 50.0, [13.67, 13.65]),
    t3(50.0, 0.5, 100.0, [3.704, 3.705]),
    t3(50.0, 0.7, 71.35, [2.798, 2.803]),
    t3(50.0, 0.9, 55.56, [1.151, 1.163]),
    t3(50.0, 1.1, 45.45, [1.392, 1.371]),
    t3(50.0, 1.5, 33.33, [9.605, 9.548]),
    t3(50.0, 2.0, 25.0, [25.86, 25.72]),
    t3(10.0, 0.5, 20.0, [19.26, 20.10]),
    t3(10.0, 0.7, 14.29, [14.39, 15.55]),
    t3(10.0, 0.9, 11.11, [5.738, 7.542]),
    t3(10.0, 1.1, 9.091, [6.678, 4.080]),
    t3(10.0, 1.5, 6.667, [37.51, 33.08]),
    t3(10.0, 2.0, 5.000, [66.34, 61.66]),
];

fn mass_index(m: MassModel) -> usize {
    match m {
        MassModel::Consistent => 0,
        MassModel::Lumped => 1,
    }
}

impl ErrorRow {
    pub fn printed(&self, column: PrintedColumn, mass: MassModel) -> f64 {
        match column {
            PrintedColumn::Damping => self.damping[mass_index(mass)],
            PrintedColumn::Velocity => self.velocity[mass_index(mass)],
            PrintedColumn::Reflection => f64::NAN,
        }
    }
}

impl ReflectionRow {
    pub fn printed(&self, mass: MassModel) -> f64 {
        self.reflection[mass_index(mass)]
    }
}

/// Every printed cell of `table` (1, 2 or 3) with its coordinates.
pub fn printed_cells(table: u8) -> Vec<PrintedCell> {
    let mut out = Vec::new();
    match table {
        1 | 2 => {
            let rows: &[ErrorRow] = if table == 1 { &TABLE1 } else { &TABLE2 };
            for (row, r) in rows.iter().enumerate() {
                for column in [PrintedColumn::Damping, PrintedColumn::Velocity] {
                    for mass in MassModel::ALL {
                        out.push(PrintedCell {
                            table,
                            row,
                            column,
                            mass,
                            printed: r.printed(column, mass),
                        });
                    }
                }
            }
        }
        3 => {
            for (row, r) in TABLE3.iter().enumerate() {
                for mass in MassModel::ALL {
                    out.push(PrintedCell {
                        table,
                        row,
                        column: PrintedColumn::Reflection,
                        mass,
                        printed: r.printed(mass),
                    });
                }
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        assert_eq!(printed_cells(1).len(), 60);
        assert_eq!(printed_cells(2).len(), 32);
        assert_eq!(printed_cells(3).len(), 36);
        assert!(printed_cells(4).is_empty());
    }

    #[test]
    fn right_mesh_column_is_b_over_alpha() {
        for r in TABLE3 {
            let rel = (r.b_right - r.a / r.alpha).abs() / (r.a / r.alpha);
            // the a = 50, α = 0.7 entry prints 71.35 for 71.43
            assert!(rel < 2e-3, "{r:?}");
        }
    }

    #[test]
    fn coordinates_are_readable() {
        let c = printed_cells(1)[3];
        assert_eq!(c.coordinates(), "T1:r1:velocity:lumped");
        assert_eq!(c.printed, 0.1121);
    }
}
