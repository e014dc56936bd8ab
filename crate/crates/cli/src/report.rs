//! Tabular output with a replay metadata block.

use std::io::Write;

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) if *x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&x.abs()) => {
                x.to_string()
            }
            Cell::Real(x) => format!("{x:e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
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

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl ReportTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Header and data rows as CSV, without the metadata block.
    pub fn data_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        out.push_str(&self.data_csv()?);
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Doc<'a> {
            metadata: serde_json::Map<String, serde_json::Value>,
            notes: &'a [String],
            columns: &'a [String],
            rows: &'a [Vec<Cell>],
        }
        let metadata = self
            .metadata
            .iter()
            .map(|(k, v)| {
                let value = serde_json::from_str(v)
                    .unwrap_or_else(|_| serde_json::Value::String(v.clone()));
                (k.clone(), value)
            })
            .collect();
        let doc = Doc {
            metadata,
            notes: &self.notes,
            columns: &self.columns,
            rows: &self.rows,
        };
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> Result<(), CliError> {
        let text = if json {
            self.to_json()?
        } else {
            self.to_csv()?
        };
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?;
        if json {
            out.write_all(b"\n")
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        Ok(())
    }
}
