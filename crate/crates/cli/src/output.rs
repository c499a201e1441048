//! Rendering of reports as JSON, CSV or text.
//!
//! Floats are rounded to 12 significant digits everywhere so identical
//! configurations give byte-identical output.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's output: its effective configuration, scalar results and an
/// optional table.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Map<String, Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Text-mode body replacing the default rendering (the word for
    /// `generate`).
    pub text_body: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, config: impl Serialize) -> Self {
        Report {
            command,
            config: serde_json::to_value(config).expect("config serializes"),
            result: Map::new(),
            header: Vec::new(),
            rows: Vec::new(),
            text_body: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("result serializes");
        self.result.insert(key.to_string(), v);
    }

    pub fn table(&mut self, header: Vec<&'static str>, rows: Vec<Vec<Value>>) {
        self.header = header;
        self.rows = rows;
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        let config = round_floats(&self.config);
        let result = round_floats(&Value::Object(self.result.clone()));
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("command".into(), Value::String(self.command.into()));
                doc.insert("config".into(), config);
                let mut result = result;
                if !self.header.is_empty() {
                    let rows = self
                        .rows
                        .iter()
                        .map(|r| {
                            let obj: Map<String, Value> = self
                                .header
                                .iter()
                                .zip(r)
                                .map(|(h, v)| (h.to_string(), round_floats(v)))
                                .collect();
                            Value::Object(obj)
                        })
                        .collect();
                    result
                        .as_object_mut()
                        .unwrap()
                        .insert("rows".into(), Value::Array(rows));
                }
                doc.insert("result".into(), result);
                writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(doc))?)
            }
            Format::Csv => {
                writeln!(out, "# command: {}", self.command)?;
                writeln!(out, "# config: {config}")?;
                if !self.result.is_empty() {
                    writeln!(out, "# result: {result}")?;
                }
                if self.header.is_empty() {
                    return Ok(());
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(std::io::Error::other)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(cell)).map_err(std::io::Error::other)?;
                }
                out.write_all(&w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?)
            }
            Format::Text => {
                writeln!(out, "# {} {config}", self.command)?;
                if let Some(body) = &self.text_body {
                    return writeln!(out, "{body}");
                }
                for (k, v) in result.as_object().unwrap() {
                    writeln!(out, "{k}: {}", cell(v))?;
                }
                if !self.header.is_empty() {
                    write_table(out, &self.header, &self.rows)?;
                }
                Ok(())
            }
        }
    }
}

fn write_table(out: &mut impl Write, header: &[&str], rows: &[Vec<Value>]) -> std::io::Result<()> {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .chain(std::iter::once(header[j].len()))
                .max()
                .unwrap()
        })
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in &cells {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

/// Plain rendering of a value for CSV cells and text.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sig12(x),
            _ => n.to_string(),
        },
        other => round_floats(other).to_string(),
    }
}

/// `x` to 12 significant digits, trailing zeros removed.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (m, e) = s.split_once('e').unwrap();
        let m = if m.contains('.') {
            m.trim_end_matches('0').trim_end_matches('.')
        } else {
            m
        };
        format!("{m}e{e}")
    }
}

fn round_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            sig12(x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round_floats(v))).collect()),
        other => other.clone(),
    }
}
