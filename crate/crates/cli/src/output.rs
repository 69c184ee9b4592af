use anyhow::Result;
use serde_json::{Map, Value};

use stabrank::exactnum::{parse_rational, Cyclotomic8};

use crate::args::Format;

/// Replaces exact scalars with floats rounded to `tol`: quadruples of
/// rational strings become `[re, im]`, lone rational strings a number.
pub fn to_float(v: Value, tol: f64) -> Value {
    match v {
        Value::Array(items) => {
            let strings: Option<Vec<String>> = items.iter().map(|x| x.as_str().filter(|s| s.contains('/')).map(str::to_owned)).collect();
            if let Some(s) = strings.filter(|s| s.len() == 4) {
                if let Some(c) = Cyclotomic8::from_strings(&s) {
                    let z = c.to_complex();
                    return Value::from(vec![round(z.re, tol), round(z.im, tol)]);
                }
            }
            Value::Array(items.into_iter().map(|x| to_float(x, tol)).collect())
        }
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, x)| (k, to_float(x, tol))).collect()),
        Value::String(s) if s.contains('/') => match parse_rational(&s) {
            Some(r) => Value::from(round(Cyclotomic8::from_rational(r).to_complex().re, tol)),
            None => Value::String(s),
        },
        other => other,
    }
}

fn round(x: f64, tol: f64) -> f64 {
    let digits = (-tol.log10()).ceil().clamp(0.0, 17.0) as usize;
    let r: f64 = format!("{x:.digits$}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// JSON (pretty, trailing newline) or CSV. CSV writes one row per element
/// of the first list-of-records field (terms, states, levels), with the
/// scalar fields of the parent repeated on each row; other nested values
/// are embedded as compact JSON.
pub fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(v)? + "\n"),
        Format::Csv => {
            let rows = csv_rows(v);
            let mut header: Vec<String> = Vec::new();
            for row in &rows {
                for k in row.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in &rows {
                w.write_record(header.iter().map(|k| cell(row.get(k).unwrap_or(&Value::Null))))?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

fn csv_rows(v: &Value) -> Vec<Map<String, Value>> {
    let records = |x: &Value| -> Option<Vec<Map<String, Value>>> {
        let items = x.as_array().filter(|a| !a.is_empty())?;
        items.iter().map(|i| i.as_object().cloned()).collect()
    };
    match v {
        Value::Object(m) => {
            let nested = m.iter().find_map(|(k, x)| records(x).map(|r| (k.clone(), r)));
            match nested {
                Some((key, children)) => {
                    let parent: Map<String, Value> =
                        m.iter().filter(|(k, x)| **k != key && !x.is_array() && !x.is_object()).map(|(k, x)| (k.clone(), x.clone())).collect();
                    children
                        .into_iter()
                        .map(|c| {
                            let mut row = parent.clone();
                            row.extend(c);
                            row
                        })
                        .collect()
                }
                None => vec![m.clone()],
            }
        }
        other => records(other).unwrap_or_else(|| vec![Map::from_iter([("value".to_string(), other.clone())])]),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        _ => serde_json::to_string(v).unwrap_or_default(),
    }
}
