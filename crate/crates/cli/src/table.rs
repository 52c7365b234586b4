//! Result tables and their CSV / JSON rendering.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use vacuum_forces::units::{QuantityKind, UnitSystem};

/// Physical dimension of a column, used for display conversion only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Pure,
    Length,
    Energy,
    /// energy / length
    Force,
    /// energy / length³
    EnergyDensity,
    Temperature,
    Acceleration,
    Volume,
}

impl Dim {
    /// Factor taking a natural-unit value to `target`.
    pub fn factor(self, from: UnitSystem, target: UnitSystem) -> f64 {
        let ratio = |kind| from.si_factor(kind) / target.si_factor(kind);
        match self {
            Dim::Pure => 1.0,
            Dim::Length => ratio(QuantityKind::Length),
            Dim::Energy => ratio(QuantityKind::Energy),
            Dim::Force => ratio(QuantityKind::Energy) / ratio(QuantityKind::Length),
            Dim::EnergyDensity => ratio(QuantityKind::Energy) / ratio(QuantityKind::Length).powi(3),
            Dim::Temperature => ratio(QuantityKind::Temperature),
            Dim::Acceleration => ratio(QuantityKind::Acceleration),
            Dim::Volume => ratio(QuantityKind::PolarizabilityVolume),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub dim: Dim,
}

pub fn col(name: &str, dim: Dim) -> Column {
    Column { name: name.to_string(), dim }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// Ordered key/value metadata; version and config hash come first.
    pub metadata: Vec<(String, String)>,
}

fn format_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl ResultTable {
    pub fn new(columns: Vec<Column>) -> Self {
        Self { columns, rows: Vec::new(), metadata: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row length must match the header");
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    /// Regime tags found in the `regime` column, in first-seen order.
    pub fn regimes(&self) -> Vec<String> {
        let Some(idx) = self.columns.iter().position(|c| c.name == "regime") else {
            return Vec::new();
        };
        let mut seen: Vec<String> = Vec::new();
        for row in &self.rows {
            if let Cell::Text(t) = &row[idx] {
                if !seen.contains(t) {
                    seen.push(t.clone());
                }
            }
        }
        seen
    }

    /// Convert every dimensioned column from natural units to `target`.
    pub fn convert(&mut self, from: UnitSystem, target: UnitSystem) {
        if from == target {
            return;
        }
        let factors: Vec<f64> = self.columns.iter().map(|c| c.dim.factor(from, target)).collect();
        for row in &mut self.rows {
            for (cell, f) in row.iter_mut().zip(&factors) {
                if let Cell::Num(v) = cell {
                    *v *= f;
                }
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {}", v.replace('\n', " "));
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_num(*v),
                    Cell::Text(t) => csv_text(t),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), Value::String(v.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Num(v) if v.is_finite() => json!(v),
                            Cell::Num(_) => Value::Null,
                            Cell::Text(t) => json!(t),
                        })
                        .collect(),
                )
            })
            .collect();
        let columns: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let doc = json!({ "metadata": meta, "columns": columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}
