//! JSON run configuration: physical parameters plus output options.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::params::SystemParams;

pub const DEFAULT_PRECISION: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputOptions {
    /// Defaults to CSV for sweeps and JSON otherwise.
    pub format: Option<Format>,
    /// Significant digits of every emitted number.
    pub precision: usize,
    /// Destination file; standard output when absent.
    pub path: Option<PathBuf>,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self {
            format: None,
            precision: DEFAULT_PRECISION,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub params: SystemParams,
    pub output: OutputOptions,
}

const OUTPUT_KEY: &str = "output";

fn key_set(value: &Value) -> Vec<String> {
    value
        .as_object()
        .map(|m| m.keys().cloned().collect())
        .unwrap_or_default()
}

/// Rejects unknown keys and non-numeric values, naming the key.
fn check_keys(input: &Map<String, Value>, template: &Value, prefix: &str) -> Result<()> {
    let known = key_set(template);
    for (key, value) in input {
        let path = format!("{prefix}{key}");
        let Some(expected) = template.get(key) else {
            return Err(Error::Config(format!(
                "unknown key `{path}` (expected one of: {})",
                known.join(", ")
            )));
        };
        let ok = match expected {
            Value::Object(_) => {
                let Value::Object(inner) = value else {
                    return Err(Error::validation(path, "expected an object"));
                };
                check_keys(inner, expected, &format!("{path}."))?;
                true
            }
            Value::Bool(_) => value.is_boolean(),
            Value::Number(_) => value.is_number(),
            _ => true,
        };
        if !ok {
            return Err(Error::validation(path, format!("unexpected value {value}")));
        }
    }
    Ok(())
}

impl RunConfig {
    /// Parses a JSON document. Missing keys take the reference-device defaults.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
        let Value::Object(mut map) = value else {
            return Err(Error::Config("top level must be a JSON object".into()));
        };
        let output = match map.remove(OUTPUT_KEY) {
            Some(v) => serde_json::from_value(v)
                .map_err(|e| Error::Config(format!("`{OUTPUT_KEY}`: {e}")))?,
            None => OutputOptions::default(),
        };
        let template = serde_json::to_value(SystemParams::default())
            .map_err(|e| Error::Config(e.to_string()))?;
        check_keys(&map, &template, "")?;
        let params: SystemParams =
            serde_json::from_value(Value::Object(map)).map_err(|e| Error::Config(e.to_string()))?;
        params.validate()?;
        Ok(Self { params, output })
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut value =
            serde_json::to_value(self.params).map_err(|e| Error::Config(e.to_string()))?;
        let output =
            serde_json::to_value(&self.output).map_err(|e| Error::Config(e.to_string()))?;
        if let Value::Object(map) = &mut value {
            map.insert(OUTPUT_KEY.into(), output);
        }
        serde_json::to_string_pretty(&value).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    RunConfig::from_json_str(&text)
}
