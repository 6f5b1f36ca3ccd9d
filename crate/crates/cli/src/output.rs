//! Named CSV/JSON documents and pass/fail checks emitted by the subcommands.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A rectangular table of preformatted cells.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        json!({ "columns": self.columns, "rows": self.rows })
    }

    fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(&self.columns)?;
        for r in &self.rows {
            wr.write_record(r)?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// One output document: a table, or a JSON value (function I/O).
#[derive(Debug, Clone)]
pub enum Doc {
    Table(Table),
    Json(Value),
}

/// A named pass/fail check; any failure makes the process exit nonzero.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Everything a subcommand produces.
#[derive(Debug, Default)]
pub struct Report {
    pub docs: Vec<(String, Doc)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn doc(&mut self, name: &str, d: Doc) {
        self.docs.push((name.to_string(), d));
    }

    pub fn table(&mut self, name: &str, t: Table) {
        self.doc(name, Doc::Table(t));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn render(doc: &Doc, format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match (doc, format) {
        (Doc::Table(t), Format::Csv) => t.write_csv(&mut buf)?,
        (Doc::Table(t), Format::Json) => {
            serde_json::to_writer_pretty(&mut buf, &t.to_json())?;
            buf.push(b'\n');
        }
        (Doc::Json(v), _) => {
            serde_json::to_writer_pretty(&mut buf, v)?;
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

/// Writes the documents. With `out`, a single document goes to that file and
/// several documents go to `<out>/<name>.<ext>`; without it, everything goes
/// to stdout (CSV documents separated by `# name` lines).
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) if report.docs.len() == 1 => {
            let bytes = render(&report.docs[0].1, format)?;
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
        }
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, doc) in &report.docs {
                let ext = if matches!(doc, Doc::Json(_)) { "json" } else { format.ext() };
                let path = dir.join(format!("{name}.{ext}"));
                fs::write(&path, render(doc, format)?).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if format == Format::Json && report.docs.len() > 1 {
                let map: serde_json::Map<String, Value> = report
                    .docs
                    .iter()
                    .map(|(n, d)| {
                        let v = match d {
                            Doc::Table(t) => t.to_json(),
                            Doc::Json(v) => v.clone(),
                        };
                        (n.clone(), v)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut lock, &Value::Object(map))?;
                writeln!(lock)?;
            } else {
                for (name, doc) in &report.docs {
                    if report.docs.len() > 1 {
                        writeln!(lock, "# {name}")?;
                    }
                    lock.write_all(&render(doc, format)?)?;
                }
            }
        }
    }
    Ok(())
}

/// Prints the checks to stderr, one line each.
pub fn print_checks(checks: &[Check]) {
    for c in checks {
        eprintln!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}
