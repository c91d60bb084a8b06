//! Tabular reports rendered as CSV or JSON.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigUint),
    Rational(BigRational),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => match v.to_u64() {
                Some(small) => Value::from(small),
                None => Value::String(v.to_string()),
            },
            Cell::Float(x) => format_float(*x)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or_else(|| Value::String(format_float(*x)), Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
            other => Value::String(other.text()),
        }
    }
}

impl From<BigUint> for Cell {
    fn from(v: BigUint) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigUint> for Cell {
    fn from(v: &BigUint) -> Self {
        Cell::Int(v.clone())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(BigUint::from(v))
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(BigUint::from(v))
    }
}

impl From<BigRational> for Cell {
    fn from(q: BigRational) -> Self {
        Cell::Rational(q)
    }
}

impl From<&BigRational> for Cell {
    fn from(q: &BigRational) -> Self {
        Cell::Rational(q.clone())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Twelve significant digits, plain notation for moderate magnitudes.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let plain = format!("{x:.decimals$}");
        trim_zeros(&plain)
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// A versioned table plus the provenance of the run that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub schema: String,
    pub command: String,
    pub seed: Option<u64>,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ReportRecord {
    pub fn new(schema: &str, columns: &[&str]) -> Self {
        ReportRecord {
            schema: schema.to_string(),
            command: String::new(),
            seed: None,
            parameters: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("# {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            format!("# command: {}", self.command),
            format!(
                "# seed: {}",
                self.seed
                    .map_or_else(|| "none".to_string(), |s| s.to_string())
            ),
            format!("# schema: {}", self.schema),
        ];
        for (k, v) in &self.parameters {
            lines.push(format!("# {k}: {v}"));
        }
        lines
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in self.header_lines() {
            let _ = writeln!(out, "{line}");
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::text))
                .expect("in-memory write");
        }
        let body = writer.into_inner().expect("in-memory flush");
        out.push_str(&String::from_utf8(body).expect("utf-8 cells"));
        out
    }

    pub fn to_json(&self) -> String {
        let mut provenance = Map::new();
        provenance.insert("tool".into(), env!("CARGO_PKG_NAME").into());
        provenance.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        provenance.insert("command".into(), self.command.clone().into());
        provenance.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        let parameters: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema".into(), self.schema.clone().into());
        doc.insert("provenance".into(), Value::Object(provenance));
        doc.insert("parameters".into(), Value::Object(parameters));
        doc.insert("columns".into(), self.columns.clone().into());
        doc.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
        text.push('\n');
        text
    }
}
