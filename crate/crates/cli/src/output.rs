//! Tables of numbers written as CSV or JSON with a fixed digit count.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Real(f64),
    Int(i64),
    Text(String),
    /// Not defined at this point; empty in CSV, null in JSON.
    Missing,
}

/// `x` in scientific notation with `digits` significant digits.
pub fn fmt_real(x: f64, digits: usize) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        // -0 prints as 0 so that goldens do not depend on the sign of zero.
        format!("{:.*e}", digits - 1, if x == 0.0 { 0.0 } else { x })
    }
}

/// `x` rounded to `digits` significant digits.
pub fn round_real(x: f64, digits: usize) -> f64 {
    if x.is_finite() {
        fmt_real(x, digits).parse().expect("formatted float parses")
    } else {
        x
    }
}

impl Field {
    fn text(&self, digits: usize) -> String {
        match self {
            Field::Real(x) => fmt_real(*x, digits),
            Field::Int(n) => n.to_string(),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Field::Real(x) => Number::from_f64(round_real(*x, digits)).map_or(Value::Null, Value::Number),
            Field::Int(n) => Value::from(*n),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn object(&self, row: &[Field], digits: usize) -> Value {
        let mut m = Map::new();
        for (k, v) in self.header.iter().zip(row) {
            m.insert(k.clone(), v.json(digits));
        }
        Value::Object(m)
    }

    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|f| f.text(digits)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// CSV, or a JSON array of objects.
    pub fn write<W: Write>(&self, mut out: W, cfg: &RunConfig) -> CliResult<()> {
        match cfg.format {
            OutputFormat::Csv => self.write_csv(out, cfg.digits),
            OutputFormat::Json => {
                let rows: Vec<Value> = self.rows.iter().map(|r| self.object(r, cfg.digits)).collect();
                serde_json::to_writer_pretty(&mut out, &rows)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    /// Like [`Table::write`], but a one-row JSON table becomes a bare object.
    pub fn write_single<W: Write>(&self, mut out: W, cfg: &RunConfig) -> CliResult<()> {
        match (cfg.format, self.rows.as_slice()) {
            (OutputFormat::Json, [row]) => {
                serde_json::to_writer_pretty(&mut out, &self.object(row, cfg.digits))?;
                writeln!(out)?;
                Ok(())
            }
            _ => self.write(out, cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_real(std::f64::consts::PI, 6), "3.14159e0");
        assert_eq!(fmt_real(-0.000123456789, 8), "-1.2345679e-4");
        assert_eq!(fmt_real(f64::NAN, 6), "NaN");
        assert_eq!(round_real(2.0 / 3.0, 6), 0.666667);
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(["t", "n", "note", "gap"]);
        t.push(vec![Field::Real(1.5), Field::Int(-3), Field::Text("a,b".into()), Field::Missing]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf, 6).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,n,note,gap\n1.50000e0,-3,\"a,b\",\n");

        let cfg = RunConfig {
            format: OutputFormat::Json,
            ..RunConfig::default()
        };
        let mut buf = Vec::new();
        t.write_single(&mut buf, &cfg).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["t", "n", "note", "gap"]);
        assert!(v["gap"].is_null());
    }
}
