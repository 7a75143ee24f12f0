//! Flat `key = value` text format shared by detection configs and campaign files.
//!
//! ```text
//! # comment
//! window_n = 20
//! multipliers.similarity = 2.0
//! ```
//!
//! Keys are matched verbatim; later duplicates override earlier ones.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KvError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("{key}: cannot parse `{value}`")]
    BadValue { key: String, value: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
}

/// Parsed key/value pairs, ordered by key.
#[derive(Debug, Clone, Default)]
pub struct KvDocument {
    entries: BTreeMap<String, String>,
}

impl KvDocument {
    pub fn parse(text: &str) -> Result<Self, KvError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(KvError::Syntax { line: idx + 1 })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(KvError::EmptyKey { line: idx + 1 });
            }
            entries.insert(key.to_string(), unquote(value.trim()).to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the value under `key`, if present.
    pub fn parse_value<T: FromStr>(&self, key: &str) -> Result<Option<T>, KvError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| KvError::BadValue {
                key: key.to_string(),
                value: v.to_string(),
            }),
        }
    }

    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.insert(key.into(), value.into());
    }

    /// Renders the document back to text, one pair per line in key order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

fn unquote(v: &str) -> &str {
    if v.len() >= 2 && v.starts_with('"') && v.ends_with('"') {
        &v[1..v.len() - 1]
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_quotes() {
        let doc = KvDocument::parse("# hi\n\nwindow_n = 20\ntemplate = \"a = b\"\n").unwrap();
        assert_eq!(doc.get("window_n"), Some("20"));
        assert_eq!(doc.get("template"), Some("a = b"));
        assert_eq!(doc.parse_value::<u32>("window_n").unwrap(), Some(20));
        assert_eq!(doc.parse_value::<u32>("missing").unwrap(), None);
    }

    #[test]
    fn rejects_lines_without_equals() {
        assert_eq!(
            KvDocument::parse("a = 1\nnonsense\n").unwrap_err(),
            KvError::Syntax { line: 2 }
        );
    }

    #[test]
    fn bad_value_names_key() {
        let doc = KvDocument::parse("window_n = twenty").unwrap();
        let err = doc.parse_value::<u32>("window_n").unwrap_err();
        assert_eq!(err.to_string(), "window_n: cannot parse `twenty`");
    }
}
