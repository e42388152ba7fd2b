//! Column tables rendered as CSV or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Text(String),
    /// Rendered as an empty CSV field and as JSON `null`.
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Num(v)
        } else {
            Cell::Missing
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Header row, comma separators, LF line endings; numbers with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Int(v) => write!(out, "{v}").unwrap(),
                    Cell::Num(v) => write!(out, "{v:.16e}").unwrap(),
                    Cell::Bool(v) => write!(out, "{v}").unwrap(),
                    Cell::Text(s) => out.push_str(&csv_field(s)),
                    Cell::Missing => {}
                }
            }
            out.push('\n');
        }
        out
    }

    /// Array of row objects keyed by column name, in column order.
    pub fn to_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Int(v) => Json::from(*v),
                        Cell::Num(v) => Json::from(*v),
                        Cell::Bool(v) => Json::from(*v),
                        Cell::Text(s) => Json::from(s.as_str()),
                        Cell::Missing => Json::Null,
                    };
                    obj.insert(name.clone(), v);
                }
                Json::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("table rows serialize");
        s.push('\n');
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["n", "x", "note"]);
        t.push(vec![1usize.into(), 0.1.into(), "plain".into()]);
        t.push(vec![2usize.into(), f64::NAN.into(), "a, \"b\"".into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(csv, "n,x,note\n1,1.0000000000000001e-1,plain\n2,,\"a, \"\"b\"\"\"\n");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_numbers_round_trip() {
        for &v in &[0.1, -15.357915243206294, 1e-300, 6.02214076e23] {
            let mut t = Table::new(["v"]);
            t.push(vec![v.into()]);
            let csv = t.to_csv();
            let back: f64 = csv.lines().nth(1).unwrap().parse().unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn json_keeps_column_order_and_nulls() {
        let json = sample().to_json();
        let v: Json = serde_json::from_str(&json).unwrap();
        let first = v[0].as_object().unwrap();
        let keys: Vec<&String> = first.keys().collect();
        assert_eq!(keys, ["n", "x", "note"]);
        assert!(v[1]["x"].is_null());
        assert_eq!(v[0]["x"].as_f64(), Some(0.1));
    }

    #[test]
    #[should_panic]
    fn ragged_rows_are_rejected() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![1usize.into()]);
    }
}
