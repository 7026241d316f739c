use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA: &str = "bpb/1";

/// One table cell. Missing values print as empty CSV fields and JSON nulls.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if *v == 0.0 || (1e-5..1e16).contains(&v.abs()) => v.to_string(),
            Cell::Num(v) => format!("{v:e}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Fixed-column table; the last column is always `status` ("ok" or the
/// error that blanked the row).
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        let mut columns = columns.to_vec();
        columns.push("status");
        Self {
            command,
            columns,
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push_ok(&mut self, mut cells: Vec<Cell>) {
        cells.push(Cell::Text("ok".into()));
        self.rows.push(cells);
    }

    /// A row whose computation failed: the leading key, blanks, and the error.
    pub fn push_err(&mut self, key: f64, err: impl ToString) {
        let mut cells = vec![Cell::Num(key)];
        cells.resize(self.columns.len() - 1, Cell::Empty);
        cells.push(Cell::Text(err.to_string()));
        self.rows.push(cells);
    }

    fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut v = self.meta.clone();
        v.insert("schema".into(), json!(SCHEMA));
        v.insert("command".into(), json!(self.command));
        v.insert("columns".into(), json!(self.columns));
        v.insert("rows".into(), Value::Array(rows));
        Value::Object(v)
    }
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn emit_table(table: &Table, format: Option<Format>, path: Option<&Path>) -> Result<(), CliError> {
    let mut out = open(path)?;
    match format.unwrap_or(Format::Csv) {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json()).unwrap())?,
    }
    out.flush()?;
    Ok(())
}

/// Writes a JSON report stamped with the schema and command name.
pub fn emit_report(
    command: &str,
    mut body: Map<String, Value>,
    format: Option<Format>,
    path: Option<&Path>,
) -> Result<(), CliError> {
    if format == Some(Format::Csv) {
        return Err(CliError::Usage(format!(
            "`{command}` writes a JSON report; CSV is only for tables"
        )));
    }
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    let mut out = open(path)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(body)).unwrap())?;
    out.flush()?;
    Ok(())
}
