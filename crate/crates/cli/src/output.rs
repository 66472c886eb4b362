use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use intmat::counts::Budget;
use intmat::monte_carlo::GENERATOR_ID;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "intmat-lab/1";

/// Everything needed to rerun a command. Embedded in every JSON document.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub params: Value,
    pub workers: usize,
    pub budget: Budget,
    pub tool_version: &'static str,
    pub generator: &'static str,
    /// Unix seconds; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(subcommand: &'static str, params: &impl Serialize, workers: usize, budget: Budget) -> Self {
        RunManifest {
            subcommand,
            params: serde_json::to_value(params).expect("arguments serialize"),
            workers,
            budget,
            tool_version: env!("CARGO_PKG_VERSION"),
            generator: GENERATOR_ID,
            timestamp: timestamp(),
        }
    }
}

fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()) {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// `{"schema": ..., "manifest": ..., key: body}` on stdout.
pub fn write_json(manifest: &RunManifest, key: &str, body: impl Serialize) -> io::Result<()> {
    let doc = json!({
        "schema": SCHEMA,
        "manifest": manifest,
        key: body,
    });
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}

pub fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(io::stdout().lock())
}

/// Twelve significant digits, fixed notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Grid coordinates: at most nine decimals, trailing zeros dropped, no `-0`.
pub fn grid(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(33.0 / 81.0), "0.407407407407");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.5e-7), "0.000000150000000000");
        assert_eq!(sig12(123456.0), "123456.000000");
    }

    #[test]
    fn grid_values() {
        assert_eq!(grid(-1.9600000000000002), "-1.96");
        assert_eq!(grid(-0.0), "0");
        assert_eq!(grid(2.0), "2");
        assert_eq!(grid(-1e-12), "0");
    }
}
