//! Row model and CSV/JSON emitters shared by every command.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

/// One column of a report row.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldValue {
    /// Parameter that defines the row; printed in shortest round-trip form so
    /// it can be parsed back exactly.
    Input(f64),
    /// Computed quantity; six significant digits in CSV.
    Output(f64),
    Count(u64),
    Text(String),
    Missing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub name: String,
    pub value: FieldValue,
}

impl Field {
    pub fn input(name: impl Into<String>, v: f64) -> Self {
        Field {
            name: name.into(),
            value: FieldValue::Input(v),
        }
    }
    pub fn output(name: impl Into<String>, v: f64) -> Self {
        Field {
            name: name.into(),
            value: FieldValue::Output(v),
        }
    }
    pub fn maybe(name: impl Into<String>, v: Option<f64>) -> Self {
        Field {
            name: name.into(),
            value: v.map_or(FieldValue::Missing, FieldValue::Output),
        }
    }
    pub fn count(name: impl Into<String>, v: u64) -> Self {
        Field {
            name: name.into(),
            value: FieldValue::Count(v),
        }
    }
    pub fn text(name: impl Into<String>, v: impl Into<String>) -> Self {
        Field {
            name: name.into(),
            value: FieldValue::Text(v.into()),
        }
    }
}

pub type Row = Vec<Field>;

/// C `%.{digits}g` formatting.
pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(v: &FieldValue) -> String {
    match v {
        FieldValue::Input(x) => x.to_string(),
        FieldValue::Output(x) => format_g(*x, 6),
        FieldValue::Count(n) => n.to_string(),
        FieldValue::Text(s) => csv_escape(s),
        FieldValue::Missing => String::new(),
    }
}

fn json_value(v: &FieldValue) -> Value {
    match v {
        FieldValue::Input(x) | FieldValue::Output(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
        FieldValue::Count(n) => Value::from(*n),
        FieldValue::Text(s) => Value::String(s.clone()),
        FieldValue::Missing => Value::Null,
    }
}

pub fn row_to_json(row: &Row) -> Value {
    let mut m = Map::new();
    for f in row {
        m.insert(f.name.clone(), json_value(&f.value));
    }
    Value::Object(m)
}

/// Comment line, header line, then one line per row. All rows must share the
/// header of the first.
pub fn write_csv<W: Write>(mut w: W, metadata: &str, rows: &[Row]) -> io::Result<()> {
    writeln!(w, "# {metadata}")?;
    if let Some(first) = rows.first() {
        let header: Vec<&str> = first.iter().map(|f| f.name.as_str()).collect();
        writeln!(w, "{}", header.join(","))?;
    }
    for row in rows {
        let cells: Vec<String> = row.iter().map(|f| csv_cell(&f.value)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// One JSON object per line.
pub fn write_json_lines<W: Write>(mut w: W, rows: &[Row]) -> io::Result<()> {
    for row in rows {
        writeln!(w, "{}", row_to_json(row))?;
    }
    Ok(())
}

/// A single JSON array of row objects.
pub fn write_json_array<W: Write>(mut w: W, rows: &[Row]) -> io::Result<()> {
    let arr = Value::Array(rows.iter().map(row_to_json).collect());
    writeln!(w, "{arr}")
}

/// Split one CSV line on commas, honouring double-quoted cells.
pub fn parse_csv_line(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        let cases = [
            (0.01645, "0.01645"),
            (0.016457123, "0.0164571"),
            (123456.7, "123457"),
            (1234567.0, "1.23457e+06"),
            (0.000012345678, "1.23457e-05"),
            (0.0001, "0.0001"),
            (-2.5, "-2.5"),
            (100.0, "100"),
            (999999.5, "1e+06"),
            (0.0, "0"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x, 6), s, "{x}");
        }
    }

    #[test]
    fn csv_layout() {
        let rows = vec![vec![
            Field::input("a", 0.1),
            Field::output("x", 1.0 / 3.0),
            Field::maybe("y", None),
            Field::text("note", "p, q"),
        ]];
        let mut buf = Vec::new();
        write_csv(&mut buf, "meta", &rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "# meta\na,x,y,note\n0.1,0.333333,,\"p, q\"\n");
        let cells = parse_csv_line(s.lines().nth(2).unwrap());
        assert_eq!(cells, vec!["0.1", "0.333333", "", "p, q"]);
    }

    #[test]
    fn json_keeps_full_precision_and_nulls() {
        let row = vec![Field::output("x", 1.0 / 3.0), Field::maybe("y", None)];
        let v = row_to_json(&row);
        assert_eq!(v["x"].as_f64().unwrap(), 1.0 / 3.0);
        assert!(v["y"].is_null());
    }
}
