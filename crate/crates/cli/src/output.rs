//! JSON-lines and CSV writers over flat-ish JSON records.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Format, OUT_DIR_ENV};

/// `value` serialized with `"record": kind` as its first key.
pub fn tagged<T: Serialize>(kind: &str, value: &T) -> Value {
    let mut out = Map::new();
    out.insert("record".into(), Value::String(kind.into()));
    match serde_json::to_value(value).expect("records serialize") {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

pub fn render_json(records: &[Value]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => serde_json::to_string(v).expect("records serialize"),
    }
}

/// One row per record; the header is the union of keys in first-seen order.
/// Nested values become compact JSON in their cell.
pub fn render_csv(records: &[Value]) -> Result<String, csv::Error> {
    let mut header: Vec<String> = Vec::new();
    for r in records {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for r in records {
        let row: Vec<String> = header
            .iter()
            .map(|k| r.get(k).map(cell).unwrap_or_default())
            .collect();
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
}

pub fn render(records: &[Value], format: Format) -> Result<String, csv::Error> {
    match format {
        Format::Json => Ok(render_json(records)),
        Format::Csv => render_csv(records),
    }
}

/// `--out` if given, else `$BOROSMOLL_OUT_DIR/<command>.<ext>`, else stdout (`None`).
pub fn destination(out: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_path_buf());
    }
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(Path::new(&dir).join(format!("{command}.{}", format.extension())))
}

pub fn emit(text: &str, dest: Option<&Path>) -> io::Result<()> {
    match dest {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, text)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_header_is_key_union() {
        let rows = vec![json!({"a": 1, "b": [1, 2]}), json!({"a": 2, "c": "x,y"})];
        let text = render_csv(&rows).unwrap();
        assert_eq!(text, "a,b,c\n1,\"[1,2]\",\n2,,\"x,y\"\n");
    }

    #[test]
    fn tagged_puts_record_first() {
        #[derive(Serialize)]
        struct T {
            z: u8,
            a: u8,
        }
        let v = tagged("row", &T { z: 1, a: 2 });
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"record":"row","z":1,"a":2}"#);
    }

    #[test]
    fn big_integers_stay_exact() {
        let v: Value = serde_json::from_str("{\"x\":123456789012345678901234567890}").unwrap();
        assert_eq!(render_json(&[v]), "{\"x\":123456789012345678901234567890}\n");
    }
}
