//! CSV emission: metadata comment block, explicit header, `inf` literal
//! for infinite rates, shortest-round-trip float formatting (deterministic
//! for a fixed build).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::CliError;
use crate::meta::Meta;

pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

pub struct CsvWriter {
    out: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: &Path, meta: &Meta, header: &[&str]) -> Result<Self, CliError> {
        let file = File::create(path).map_err(|e| {
            CliError::validation(format!("cannot write {}: {e}", path.display()))
        })?;
        let mut out = BufWriter::new(file);
        out.write_all(meta.csv_block().as_bytes())?;
        writeln!(out, "{}", header.join(","))?;
        Ok(Self { out })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<(), CliError> {
        writeln!(self.out, "{}", fields.join(","))?;
        Ok(())
    }

    pub fn row_f64(&mut self, fields: &[f64]) -> Result<(), CliError> {
        let formatted: Vec<String> = fields.iter().map(|&x| format_f64(x)).collect();
        self.row(&formatted)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}
