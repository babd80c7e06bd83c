use std::fs;
use std::io::{self, Write};
use std::path::Path;

use nilgrowth::Error;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: rows.into_iter().map(Vec::from).collect(),
        }
    }

    /// Prepends constant columns to every row.
    pub fn with_leading(mut self, columns: &[(&str, String)]) -> Self {
        let names: Vec<String> = columns.iter().map(|(n, _)| n.to_string()).collect();
        let values: Vec<String> = columns.iter().map(|(_, v)| v.clone()).collect();
        self.header.splice(0..0, names);
        for row in &mut self.rows {
            row.splice(0..0, values.clone());
        }
        self
    }
}

pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    /// Written next to a CSV report, or to standard error.
    pub summary: Option<Value>,
    pub default_format: Format,
    /// Counterexample when an asserted bound fails.
    pub violation: Option<String>,
}

impl Report {
    pub fn json(value: impl Serialize) -> Result<Self, Error> {
        Ok(Report {
            json: to_value(value)?,
            table: None,
            summary: None,
            default_format: Format::Json,
            violation: None,
        })
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn csv_by_default(mut self) -> Self {
        self.default_format = Format::Csv;
        self
    }

    pub fn violated_if(mut self, failed: bool, counterexample: impl FnOnce() -> String) -> Self {
        if failed {
            self.violation = Some(counterexample());
        }
        self
    }
}

pub fn to_value(value: impl Serialize) -> Result<Value, Error> {
    serde_json::to_value(value).map_err(|e| Error::usage(format!("cannot serialize report: {e}")))
}

fn io_error(path: &str, e: impl std::fmt::Display) -> Error {
    Error::usage(format!("cannot write {path}: {e}"))
}

fn render_csv(table: &Table) -> Result<Vec<u8>, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| io_error("csv buffer", e))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| io_error("csv buffer", e))?;
    }
    w.into_inner().map_err(|e| io_error("csv buffer", e))
}

fn render_json(value: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s.into_bytes()
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io_error(&p.display().to_string(), e)),
        None => io::stdout().write_all(bytes).map_err(|e| io_error("standard output", e)),
    }
}

pub fn emit(report: &Report, format: Option<Format>, path: Option<&Path>) -> Result<(), Error> {
    match format.unwrap_or(report.default_format) {
        Format::Json => write_to(path, &render_json(&report.json)),
        Format::Csv => {
            let table = report
                .table
                .as_ref()
                .ok_or_else(|| Error::usage("this report has no CSV form; use --format json"))?;
            write_to(path, &render_csv(table)?)?;
            if let Some(summary) = &report.summary {
                match path {
                    Some(p) => {
                        let mut name = p.as_os_str().to_owned();
                        name.push(".summary.json");
                        write_to(Some(Path::new(&name)), &render_json(summary))?;
                    }
                    None => {
                        io::stderr()
                            .write_all(&render_json(summary))
                            .map_err(|e| io_error("standard error", e))?;
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(["a", "b"], Vec::<[String; 2]>::new()).with_leading(&[("prng", "x".into())]);
        assert_eq!(render_csv(&t).unwrap(), b"prng,a,b\n");
    }

    #[test]
    fn leading_columns_fill_rows() {
        let t = Table::new(["a"], [["1".to_string()], ["2".to_string()]]).with_leading(&[("seed", "7".into())]);
        assert_eq!(String::from_utf8(render_csv(&t).unwrap()).unwrap(), "seed,a\n7,1\n7,2\n");
    }
}
