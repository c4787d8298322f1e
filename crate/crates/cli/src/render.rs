//! JSON and aligned-text output.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::Format;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) => partition_braces(m),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(items.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

/// `{"ground", "blocks"}` as `{{1,2},{3,4}}`.
fn partition_braces(m: &Map<String, Value>) -> Option<String> {
    if m.len() != 2 || !m.contains_key("ground") {
        return None;
    }
    let blocks = m.get("blocks")?.as_array()?;
    let inner = blocks
        .iter()
        .map(|b| {
            let items = b
                .as_array()?
                .iter()
                .map(|i| i.as_u64().map(|x| x.to_string()))
                .collect::<Option<Vec<_>>>()?;
            Some(format!("{{{}}}", items.join(",")))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(format!("{{{}}}", inner.join(",")))
}

/// `{"rows", "cols", "data": [[re, im], ...]}` as a grid of complex entries.
fn matrix_grid(m: &Map<String, Value>) -> Option<Vec<Vec<String>>> {
    let rows = usize::try_from(m.get("rows")?.as_u64()?).ok()?;
    let cols = usize::try_from(m.get("cols")?.as_u64()?).ok()?;
    let data = m.get("data")?.as_array()?;
    if m.len() != 3 || data.len() != rows * cols {
        return None;
    }
    let cells = data
        .iter()
        .map(|z| {
            let pair = z.as_array()?;
            let (re, im) = (pair.first()?.as_f64()?, pair.get(1)?.as_f64()?);
            Some(if im == 0.0 {
                format!("{re}")
            } else {
                format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs())
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(cells.chunks(cols.max(1)).map(<[String]>::to_vec).collect())
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn text(value: &Value, depth: usize, out: &mut String) {
    match value {
        Value::Object(m) => {
            if let Some(grid) = matrix_grid(m) {
                let width = grid.iter().flatten().map(String::len).max().unwrap_or(0);
                for row in grid {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    let _ = writeln!(out, "{}{}", pad(depth), cells.join("  "));
                }
                return;
            }
            let key_width = m.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in m {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{}{k:<key_width$}  {s}", pad(depth));
                    }
                    None => {
                        let _ = writeln!(out, "{}{k}:", pad(depth));
                        text(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{}[{}] {s}", pad(depth), i + 1);
                    }
                    None => {
                        let _ = writeln!(out, "{}[{}]", pad(depth), i + 1);
                        text(item, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}{}", pad(depth), scalar(other).unwrap_or_default());
        }
    }
}
