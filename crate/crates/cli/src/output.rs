use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA: &str = "verma-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

pub fn emit<T: Serialize>(command: &str, body: &T, table: impl FnOnce() -> Table, format: Format, path: Option<&Path>) -> Result<(), String> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, command, body }).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let t = table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.header).map_err(|e| e.to_string())?;
            for r in &t.rows {
                w.write_record(r).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
        }
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}
