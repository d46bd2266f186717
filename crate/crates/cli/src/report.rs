use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// A subcommand result. JSON and CSV come from the serialized form; text is
/// report-specific.
pub trait Report: Serialize {
    fn verdict(&self) -> Verdict;
    fn text(&self) -> String;
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).map_err(fricke_core::Error::from)?;
            out.push('\n');
            Ok(out)
        }
        Format::Csv => to_csv(report),
        Format::Text => Ok(report.text()),
    }
}

/// One `key,value` row per scalar leaf, keys as dotted paths.
fn to_csv<R: Serialize>(report: &R) -> Result<String> {
    let value = serde_json::to_value(report).map_err(fricke_core::Error::from)?;
    let mut rows = Vec::new();
    flatten(String::new(), &value, &mut rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    let render_err = |e: csv::Error| CliError::Render(e.to_string());
    writer.write_record(["key", "value"]).map_err(render_err)?;
    for (key, value) in rows {
        writer.write_record([key, value]).map_err(render_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Render(e.to_string()))
}

fn flatten(prefix: String, value: &Value, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(join(k), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(join(&i.to_string()), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix, s.clone())),
        Value::Null => rows.push((prefix, String::new())),
        other => rows.push((prefix, other.to_string())),
    }
}
