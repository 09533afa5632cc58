//! Output helpers: fixed-precision numbers, provenance headers, and
//! writers for CSV and JSON files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal rendering with 12 significant digits and trailing zeros
/// dropped. Magnitudes outside `[1e-6, 1e15)` use exponent notation.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..15).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let rounded: f64 = sci.parse().expect("round trip");
    trim_zeros(&format!("{rounded:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Who produced a file and from which configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    pub seed: Option<u64>,
    pub config: Value,
}

impl Provenance {
    /// The hash covers the canonical (key-sorted) JSON text of `config`.
    pub fn new(config: Value, seed: Option<u64>) -> Self {
        let canonical = serde_json::to_string(&config).expect("json value serializes");
        Provenance {
            tool: TOOL.into(),
            version: VERSION.into(),
            config_sha256: sha256_hex(canonical.as_bytes()),
            seed,
            config,
        }
    }

    fn header_lines(&self) -> Vec<String> {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        vec![
            format!("# tool: {} {}", self.tool, self.version),
            format!("# config_sha256: {}", self.config_sha256),
            format!("# seed: {seed}"),
            format!("# config: {}", self.config),
        ]
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::io(p, e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn io_err(path: Option<&Path>, e: io::Error) -> CliError {
    CliError::io(path.unwrap_or(Path::new("<stdout>")), e)
}

/// Writes the provenance header, the column names and the rows.
pub fn write_csv(
    path: Option<&Path>,
    provenance: &Provenance,
    columns: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    let mut out = sink(path)?;
    for line in provenance.header_lines() {
        writeln!(out, "{line}").map_err(|e| io_err(path, e))?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| io_err(path, e))?;
    Ok(())
}

#[derive(Serialize)]
struct WithProvenance<'a, T> {
    provenance: &'a Provenance,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON object whose first key is `provenance`, followed by the
/// fields of `body` (which must serialize as a struct or map).
pub fn write_json<T: Serialize>(path: Option<&Path>, provenance: &Provenance, body: &T) -> Result<()> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, &WithProvenance { provenance, body })
        .map_err(|e| io_err(path, e.into()))?;
    writeln!(out).map_err(|e| io_err(path, e))?;
    out.flush().map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(2.25), "2.25");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0), "0.666666666667");
        assert_eq!(sig12(123456.7890123456), "123456.789012");
        assert_eq!(sig12(9.9999999999999), "10");
        assert_eq!(sig12(-0.5), "-0.5");
        assert_eq!(sig12(1.5e-9), "1.5e-9");
        assert_eq!(sig12(f64::INFINITY), "inf");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn hash_is_key_order_independent() {
        let a: Value = serde_json::from_str(r#"{"a":1,"b":2}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"b":2,"a":1}"#).unwrap();
        assert_eq!(Provenance::new(a, None).config_sha256, Provenance::new(b, None).config_sha256);
    }

    #[test]
    fn json_starts_with_provenance() {
        #[derive(Serialize)]
        struct Body {
            alpha: u8,
        }
        let f = tempfile::NamedTempFile::new().unwrap();
        write_json(Some(f.path()), &Provenance::new(Value::Null, Some(3)), &Body { alpha: 1 }).unwrap();
        let text = std::fs::read_to_string(f.path()).unwrap();
        assert!(text.trim_start().starts_with("{\n  \"provenance\""), "{text}");
        assert!(text.contains("\"alpha\": 1"));
    }
}
