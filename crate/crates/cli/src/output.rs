//! Result emission in the three output formats.

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A command result: the JSON document plus a flat table view of it for
/// the csv and pretty formats.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, headers: Vec<&'static str>) -> Self {
        Self { json, headers, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Pretty => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(r) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(self.headers.clone()))?;
                let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                writeln!(out, "{}", line(rules.iter().map(String::as_str).collect()))?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
            }
        }
        Ok(())
    }
}

/// A float printed with 17 significant digits, or `"0"`.
pub fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Output {
        let mut o = Output::new(json!({"x": [1, 2]}), vec!["name", "value"]);
        o.row(vec!["alpha".into(), "1".into()]);
        o.row(vec!["b".into(), "22,5".into()]);
        o
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Json), "{\n  \"x\": [\n    1,\n    2\n  ]\n}\n");
        assert_eq!(render(Format::Csv), "name,value\nalpha,1\nb,\"22,5\"\n");
        let pretty = render(Format::Pretty);
        assert!(pretty.starts_with("name   value\n"));
        assert!(pretty.contains("alpha  1\n"));
    }
}
