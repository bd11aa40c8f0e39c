//! JSON emission with the same metadata block as the CSV side.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::Value;

use crate::error::CliError;
use crate::meta::Meta;

/// Write `{ "meta": ..., <fields of body> }` pretty-printed.
pub fn write_json(path: &Path, meta: &Meta, body: Value) -> Result<(), CliError> {
    let mut doc = serde_json::Map::new();
    doc.insert("meta".into(), meta.json_value());
    match body {
        Value::Object(obj) => {
            for (k, v) in obj {
                doc.insert(k, v);
            }
        }
        other => {
            doc.insert("data".into(), other);
        }
    }
    let file = File::create(path)
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))
        .map_err(|e| CliError::internal(format!("json serialisation: {e}")))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// JSON value for a possibly-infinite rate (JSON numbers cannot carry
/// infinities; use the string "inf" instead, mirroring the CSV literal).
pub fn rate_value(x: f64) -> Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}
