//! Report emission: a versioned JSON envelope with keys in sorted order,
//! or CSV for radius profiles.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::options::Format;

pub const SCHEMA: &str = "foliation-lab/1";

/// A finished command: its serialized result and whether the result is a
/// mathematical refutation or failed check.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub csv: Option<String>,
    pub refuted: bool,
}

impl Report {
    pub fn new(command: &str, result: &impl Serialize) -> Result<Self, CliError> {
        Ok(Report {
            command: command.to_string(),
            result: to_value(result)?,
            csv: None,
            refuted: false,
        })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn refuted_if(mut self, refuted: bool) -> Self {
        self.refuted = refuted;
        self
    }
}

pub fn to_value(result: &impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(result).map_err(|e| CliError::Serialization(e.to_string()))
}

/// Bytes for standard output. JSON object keys come out sorted because
/// `serde_json` maps are ordered.
pub fn emit_report(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": report.command,
                "result": report.result,
            });
            let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Serialization(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => report
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage(format!("`{}` has no CSV form; use --format json", report.command))),
    }
}

/// Two-column CSV of a series.
pub fn series_csv(header: &str, rows: &[(f64, f64)]) -> String {
    let mut out = format!("r,{header}\n");
    for (r, v) in rows {
        out.push_str(&format!("{r},{v}\n"));
    }
    out
}
