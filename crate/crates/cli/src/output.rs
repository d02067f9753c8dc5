use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, RunConfig};
use crate::CliError;

/// A document in both machine formats.
pub struct Document {
    pub json: Value,
    pub csv: String,
}

impl Document {
    /// CSV as `key,value` lines flattened from the JSON value.
    pub fn flat<T: Serialize>(v: &T) -> Result<Self, CliError> {
        let json = to_value(v)?;
        let mut csv = String::from("key,value\n");
        flatten("", &json, &mut csv);
        Ok(Document { json, csv })
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(format!("serialization failed: {e}")))
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix},{}\n", csv_field(s))),
        Value::Null => out.push_str(&format!("{prefix},\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Full-precision number for CSV; empty for missing or non-finite values.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else {
        String::new()
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// `v` rounded to `digits` significant digits, for display only.
pub fn display(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    format!("{:.*e}", digits - 1, v)
        .parse::<f64>()
        .map(|r| format!("{r}"))
        .unwrap_or_else(|_| format!("{v}"))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn emit(cfg: &RunConfig, doc: &Document) -> Result<(), CliError> {
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.json).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => doc.csv.clone(),
    };
    match &cfg.out {
        Some(p) => write_text(p, &text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening() {
        let v = serde_json::json!({"a": [1.5, 2], "b": {"c": null}});
        let d = Document::flat(&v).unwrap();
        assert_eq!(d.csv, "key,value\na.0,1.5\na.1,2\nb.c,\n");
    }

    #[test]
    fn display_rounding() {
        assert_eq!(display(0.42400805, 3), "0.424");
        assert_eq!(display(1.3512748e-7, 2), "0.00000014");
    }
}
