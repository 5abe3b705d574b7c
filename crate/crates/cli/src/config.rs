//! Option layering: command-line flag, then config file, then default.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Default)]
pub struct Layers {
    file: Map<String, Value>,
}

impl Layers {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Domain(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
            .map_err(|e| CliError::Domain(format!("config {}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        match serde_json::from_str::<Value>(text.trim_start_matches('\u{feff}')) {
            Ok(Value::Object(file)) => Ok(Self { file }),
            Ok(_) => Err("top level must be a JSON object".into()),
            Err(e) => Err(e.to_string()),
        }
    }

    /// Flag if given, else the file entry under `key`.
    pub fn pick<T: DeserializeOwned>(
        &self,
        key: &str,
        flag: Option<T>,
    ) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key {key:?}: {e}"))),
        }
    }

    pub fn or<T: DeserializeOwned>(
        &self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T, CliError> {
        Ok(self.pick(key, flag)?.unwrap_or(default))
    }

    pub fn require<T: DeserializeOwned>(&self, key: &str, flag: Option<T>) -> Result<T, CliError> {
        self.pick(key, flag)?.ok_or_else(|| {
            CliError::Usage(format!(
                "missing required option --{}",
                key.replace('_', "-")
            ))
        })
    }

    /// A string-valued entry parsed with `FromStr` (spaces, branch names).
    pub fn pick_parsed<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => s
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key {key:?}: {e}"))),
            Some(v) => Err(CliError::Usage(format!(
                "config key {key:?}: expected a string, got {v}"
            ))),
        }
    }

    pub fn file_flag(&self, key: &str) -> Result<bool, CliError> {
        Ok(self.pick::<bool>(key, None)?.unwrap_or(false))
    }
}
