//! Word lists for sentiment and gender lookups.
//!
//! Both load from tab-separated text with `#` comments. Bundled defaults are
//! compiled in; either can be replaced from a file.

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

const BUNDLED_SENTIMENT: &str = include_str!("../../data/sentiment.tsv");
const BUNDLED_GENDER: &str = include_str!("../../data/gender.tsv");

pub const MAX_VALENCE: i8 = 5;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `token<TAB>value`")]
    Syntax { line: usize },
    #[error("line {line}: valence `{value}` is not an integer in [-5, 5]")]
    Valence { line: usize, value: String },
    #[error("line {line}: gender `{value}` must be m or f")]
    Gender { line: usize, value: String },
    #[error("lexicon is empty")]
    Empty,
}

fn entries(text: &str) -> impl Iterator<Item = (usize, Result<(&str, &str), LexiconError>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let parsed = line
            .split_once('\t')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, v)| !k.is_empty() && !v.is_empty())
            .ok_or(LexiconError::Syntax { line: idx + 1 });
        Some((idx + 1, parsed))
    })
}

fn read(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Token to integer valence in `[-5, 5]`; lookups are case-insensitive.
#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    valences: HashMap<String, i8>,
}

impl SentimentLexicon {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut valences = HashMap::new();
        for (line, entry) in entries(text) {
            let (token, value) = entry?;
            let valence: i8 = value
                .parse()
                .ok()
                .filter(|v: &i8| v.abs() <= MAX_VALENCE)
                .ok_or_else(|| LexiconError::Valence {
                    line,
                    value: value.to_string(),
                })?;
            valences.insert(token.to_lowercase(), valence);
        }
        if valences.is_empty() {
            return Err(LexiconError::Empty);
        }
        Ok(Self { valences })
    }

    pub fn from_path(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_SENTIMENT).expect("bundled sentiment lexicon is valid")
    }

    /// Valence of an already-lowercased token.
    pub fn valence(&self, token: &str) -> Option<i8> {
        self.valences.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }
}

impl FromIterator<(String, i8)> for SentimentLexicon {
    /// Builds a lexicon directly. Valences are clamped to `[-5, 5]`.
    fn from_iter<I: IntoIterator<Item = (String, i8)>>(iter: I) -> Self {
        Self {
            valences: iter
                .into_iter()
                .map(|(k, v)| (k.to_lowercase(), v.clamp(-MAX_VALENCE, MAX_VALENCE)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "m",
            Gender::Female => "f",
        }
    }
}

/// Given name to gender; lookups are case-insensitive.
#[derive(Debug, Clone)]
pub struct GenderLexicon {
    names: HashMap<String, Gender>,
}

impl GenderLexicon {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut names = HashMap::new();
        for (line, entry) in entries(text) {
            let (name, value) = entry?;
            let gender = match value {
                "m" | "M" => Gender::Male,
                "f" | "F" => Gender::Female,
                _ => {
                    return Err(LexiconError::Gender {
                        line,
                        value: value.to_string(),
                    })
                }
            };
            names.insert(name.to_lowercase(), gender);
        }
        if names.is_empty() {
            return Err(LexiconError::Empty);
        }
        Ok(Self { names })
    }

    pub fn from_path(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_GENDER).expect("bundled gender lexicon is valid")
    }

    pub fn lookup(&self, name: &str) -> Option<Gender> {
        self.names.get(&name.to_lowercase()).copied()
    }

    /// All names of one gender, sorted. Used by the synthetic generator.
    pub fn names_of(&self, gender: Gender) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .names
            .iter()
            .filter(|(_, g)| **g == gender)
            .map(|(n, _)| n.as_str())
            .collect();
        v.sort_unstable();
        v
    }
}

impl FromIterator<(String, Gender)> for GenderLexicon {
    fn from_iter<I: IntoIterator<Item = (String, Gender)>>(iter: I) -> Self {
        Self {
            names: iter
                .into_iter()
                .map(|(k, v)| (k.to_lowercase(), v))
                .collect(),
        }
    }
}
