//! Run configuration and rendering of reports as text, JSON or CSV.

use qtl_core::algebra::Field;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    pub max_len: Option<u64>,
    pub max_j: Option<u64>,
    pub trials: Option<u64>,
    pub max_monomials: u64,
    pub max_products: u64,
    pub max_terms: u64,
}

/// Everything that determines a run's output; embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub field: Field,
    pub seed: u64,
    pub budgets: Budgets,
    pub format: Format,
    pub version: &'static str,
}

/// Rows of a CSV rendering.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// The result of one command before rendering.
#[derive(Clone, Debug)]
pub struct Output {
    pub result: Value,
    pub text: String,
    pub table: Option<Table>,
    /// a failed check still prints its report but exits nonzero
    pub failed: bool,
}

impl Output {
    pub fn new(result: Value, text: String) -> Self {
        Output { result, text, table: None, failed: false }
    }
}

pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(command: &str) -> String {
    format!("qtl.{command}.v{SCHEMA_VERSION}")
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn render(config: &RunConfig, out: &Output) -> Result<String, CliError> {
    match config.format {
        Format::Json => {
            let doc = json!({
                "schema": schema(&config.command),
                "config": config,
                "result": out.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut s = format!(
                "# qtl {} field={} seed={}{}\n",
                config.command,
                config.field,
                config.seed,
                config.input.as_deref().map(|p| format!(" input={p}")).unwrap_or_default()
            );
            s.push_str(&out.text);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let table = match &out.table {
                Some(t) => t.clone(),
                None => {
                    let mut t = Table::new(&["key", "value"]);
                    if let Value::Object(map) = &out.result {
                        for (k, v) in map {
                            t.push(vec![k.clone(), scalar_text(v)]);
                        }
                    }
                    t
                }
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Output(e.to_string());
            w.write_record(&table.header).map_err(io)?;
            for r in &table.rows {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

/// Structured diagnostic for a failed run.
pub fn render_error(format: Format, command: &str, err: &CliError) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "schema": schema("error"),
                "command": command,
                "error": { "kind": err.kind(), "message": err.to_string() },
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap_or_default())
        }
        _ => format!("error[{}]: {}\n", err.kind(), err),
    }
}
