//! Tabular reports rendered as CSV, JSON or plain text.
//!
//! Floats are printed as `{:.14e}` (15 significant digits) in every format,
//! and the resolved configuration travels with the table, so equal inputs
//! give byte-equal output.

use std::fmt::Write as _;

use clap::ValueEnum;
use oddzeta::{Cplx, Real};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Real),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) if x.is_nan() => "NaN".into(),
            Cell::Num(x) => format!("{x:.14e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(x) if !x.is_finite() => "null".into(),
            Cell::Text(s) => Value::String(s.clone()).to_string(),
            Cell::Empty => "null".into(),
            other => other.text(),
        }
    }
}

impl From<Real> for Cell {
    fn from(x: Real) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// Real and imaginary parts as two cells.
pub fn cplx(z: Cplx) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, config: Value, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Plain => self.plain(),
        }
    }

    fn csv(&self) -> String {
        let mut head = format!("# oddzeta {}\n# config {}\n", self.command, self.config);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text)).expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory write");
        head.push_str(&String::from_utf8(body).expect("utf-8 cells"));
        head
    }

    fn json(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{{\"command\":{},\"config\":{},\"columns\":{},\"rows\":[",
            Value::String(self.command.clone()), self.config, Value::from(self.columns.clone()));
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str(if i == 0 { "\n[" } else { ",\n[" });
            s.push_str(&row.iter().map(Cell::json).collect::<Vec<_>>().join(","));
            s.push(']');
        }
        s.push_str("\n]}\n");
        s
    }

    fn plain(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |items: &[String]| {
            items
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut s = format!("oddzeta {}\nconfig {}\n\n", self.command, self.config);
        s.push_str(&line(&self.columns));
        s.push('\n');
        for r in &cells {
            s.push_str(&line(r));
            s.push('\n');
        }
        s
    }
}
