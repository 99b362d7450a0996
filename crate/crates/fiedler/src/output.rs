//! JSON and CSV rendering of command results.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Fixed-point rendering with at least 12 decimals, and at least 12
/// significant digits for magnitudes from 1e-12 up. Non-finite values have
/// no rendering.
pub fn fmt_float(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    let decimals = if v.abs() < 1e-12 { 12 } else { (11 - v.abs().log10().floor() as i64).clamp(12, 24) as usize };
    let s = format!("{v:.decimals$}");
    Some(if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') { s[1..].to_string() } else { s })
}

/// A float as a JSON number carrying its fixed-point text; `null` if not finite.
pub fn num(v: f64) -> Value {
    fmt_float(v).and_then(|s| s.parse::<Number>().ok()).map_or(Value::Null, Value::Number)
}

pub fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

pub fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            items.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out))
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Writes one result record: a JSON object, or `key,value` rows with
/// nested keys joined by dots.
pub fn write_record(out: &mut dyn Write, format: Format, record: &Map<String, Value>) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", &Value::Object(record.clone()), &mut rows);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"]).map_err(csv_err)?;
            for (k, v) in rows {
                w.write_record([k, v]).map_err(csv_err)?;
            }
            w.flush()
        }
    }
}

/// Writes rows under `headers`: CSV with a header line, or a JSON array of
/// objects.
pub fn write_table(out: &mut dyn Write, format: Format, headers: &[&str], rows: &[Vec<Value>]) -> io::Result<()> {
    match format {
        Format::Json => {
            let objects: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &objects)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(headers).map_err(csv_err)?;
            for r in rows {
                w.write_record(r.iter().map(cell)).map_err(csv_err)?;
            }
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats() {
        assert_eq!(fmt_float(2.0).unwrap(), "2.000000000000");
        assert_eq!(fmt_float(0.0936).unwrap(), "0.0936000000000");
        assert_eq!(fmt_float(-1e-17).unwrap(), "0.000000000000");
        assert_eq!(fmt_float(1.5e-8).unwrap(), "0.0000000150000000000");
        assert_eq!(fmt_float(f64::NAN), None);
        assert_eq!(serde_json::to_string(&num(2.0)).unwrap(), "2.000000000000");
        assert_eq!(num(f64::INFINITY), Value::Null);
    }

    #[test]
    fn csv_record_flattens() {
        let rec = json!({"a": num(1.0), "b": {"c": [1, 2]}, "d": [{"e": "x"}]});
        let mut buf = Vec::new();
        write_record(&mut buf, Format::Csv, rec.as_object().unwrap()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "key,value\na,1.000000000000\nb.c,1;2\nd.0.e,x\n");
    }

    #[test]
    fn table_formats() {
        let rows = vec![vec![json!(1), num(0.5)]];
        let mut buf = Vec::new();
        write_table(&mut buf, Format::Csv, &["m", "l"], &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "m,l\n1,0.500000000000\n");
        let mut buf = Vec::new();
        write_table(&mut buf, Format::Json, &["m", "l"], &rows).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("\"l\": 0.500000000000"));
    }
}
