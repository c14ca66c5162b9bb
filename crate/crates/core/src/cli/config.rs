//! `key = value` search configuration files.
//!
//! Recognised keys mirror the long flag names: `n`, `r`, `alpha`, `k`, `x`,
//! `inequality`, `format`, `stop-at-first`, `threads`. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

const KEYS: &[&str] = &[
    "n",
    "r",
    "alpha",
    "k",
    "x",
    "inequality",
    "format",
    "stop-at-first",
    "threads",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::Parse(format!("config line {}: unknown key {key:?}", lineno + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" | "on" => Ok(true),
                "false" | "no" | "0" | "off" => Ok(false),
                other => Err(Error::Parse(format!("{key}: expected a boolean, got {other:?}"))),
            })
            .transpose()
    }
}
