//! `key=value` configuration files. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "N",
    "m",
    "mu",
    "phi",
    "steps",
    "threshold",
    "out",
    "jobs",
    "m_max",
    "m_list",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key '{key}': cannot parse '{v}'")))
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let cfg = Config::parse("# sweep\nN = 3\n\nm=0.4  # squeezing\nm-max=1\n").unwrap();
        assert_eq!(cfg.get::<f64>("N").unwrap(), Some(3.0));
        assert_eq!(cfg.get::<f64>("m").unwrap(), Some(0.4));
        assert_eq!(cfg.get::<f64>("m_max").unwrap(), Some(1.0));
        assert_eq!(cfg.get::<f64>("mu").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("N 3").is_err());
        assert!(Config::parse("colour=blue").is_err());
        let cfg = Config::parse("steps=ten").unwrap();
        assert!(cfg.get::<usize>("steps").is_err());
    }
}
