use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::kv::{KvDocument, KvError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] KvError),
    #[error("{field} must be {bound}")]
    OutOfRange {
        field: &'static str,
        bound: &'static str,
    },
}

/// How the sentiment flag reads "higher than the threshold".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SentimentMode {
    /// `|sentiment| > threshold`: more extreme in either direction.
    #[default]
    Absolute,
    /// `sentiment > threshold`: more positive only.
    Signed,
}

impl std::str::FromStr for SentimentMode {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "absolute" => Ok(Self::Absolute),
            "signed" => Ok(Self::Signed),
            _ => Err(()),
        }
    }
}

impl SentimentMode {
    fn as_str(self) -> &'static str {
        match self {
            Self::Absolute => "absolute",
            Self::Signed => "signed",
        }
    }
}

/// Per-attribute weights applied before totaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Multipliers {
    /// Count of neighbors above the similarity threshold.
    pub similarity: f64,
    /// Count of similar neighbors inside the burst window.
    pub time_difference: f64,
    /// Sum of similarities over all neighbors.
    pub similarity_sum: f64,
    pub language: f64,
    pub gender: f64,
    pub user_agent: f64,
    pub time_zone: f64,
    pub location: f64,
    pub profile_url: f64,
    pub profile_description: f64,
    pub entropy: f64,
    pub sentiment: f64,
}

impl Default for Multipliers {
    fn default() -> Self {
        Self {
            similarity: 2.0,
            time_difference: 1.0,
            similarity_sum: 1.2,
            language: 1.0,
            gender: 1.0,
            user_agent: 1.0,
            time_zone: 1.0,
            location: 1.0,
            profile_url: 1.0,
            profile_description: 1.0,
            entropy: 1.2,
            sentiment: 1.2,
        }
    }
}

impl Multipliers {
    pub const KEYS: [&'static str; 12] = [
        "similarity",
        "time_difference",
        "similarity_sum",
        "language",
        "gender",
        "user_agent",
        "time_zone",
        "location",
        "profile_url",
        "profile_description",
        "entropy",
        "sentiment",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "similarity" => &mut self.similarity,
            "time_difference" => &mut self.time_difference,
            "similarity_sum" => &mut self.similarity_sum,
            "language" => &mut self.language,
            "gender" => &mut self.gender,
            "user_agent" => &mut self.user_agent,
            "time_zone" => &mut self.time_zone,
            "location" => &mut self.location,
            "profile_url" => &mut self.profile_url,
            "profile_description" => &mut self.profile_description,
            "entropy" => &mut self.entropy,
            "sentiment" => &mut self.sentiment,
            _ => return None,
        })
    }

    fn values(&self) -> [f64; 12] {
        [
            self.similarity,
            self.time_difference,
            self.similarity_sum,
            self.language,
            self.gender,
            self.user_agent,
            self.time_zone,
            self.location,
            self.profile_url,
            self.profile_description,
            self.entropy,
            self.sentiment,
        ]
    }

    /// Sum of all twelve weights: the best possible score per neighbor.
    pub fn per_neighbor_max(&self) -> f64 {
        self.values().iter().sum()
    }
}

/// Every threshold, weight and the window size. Defaults are the tuned values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionConfig {
    pub window_n: usize,
    pub sim_threshold: f64,
    pub time_threshold_ms: i64,
    pub entropy_threshold_bits: f64,
    pub sentiment_threshold: f64,
    pub sentiment_mode: SentimentMode,
    pub high_score_threshold: f64,
    pub multipliers: Multipliers,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            window_n: 20,
            sim_threshold: 0.6,
            time_threshold_ms: 4000,
            entropy_threshold_bits: 3.5,
            sentiment_threshold: 0.5,
            sentiment_mode: SentimentMode::Absolute,
            high_score_threshold: 0.25,
            multipliers: Multipliers::default(),
        }
    }
}

fn unit_interval(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |field, bound| Err(ConfigError::OutOfRange { field, bound });
        if self.window_n < 1 {
            return fail("window_n", ">= 1");
        }
        if !unit_interval(self.sim_threshold) {
            return fail("sim_threshold", "in [0,1]");
        }
        if self.time_threshold_ms <= 0 {
            return fail("time_threshold_ms", "> 0");
        }
        if !(self.entropy_threshold_bits > 0.0 && self.entropy_threshold_bits.is_finite()) {
            return fail("entropy_threshold_bits", "> 0");
        }
        if !unit_interval(self.sentiment_threshold) {
            return fail("sentiment_threshold", "in [0,1]");
        }
        if !unit_interval(self.high_score_threshold) {
            return fail("high_score_threshold", "in [0,1]");
        }
        for (key, value) in Multipliers::KEYS.iter().zip(self.multipliers.values()) {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::OutOfRange {
                    field: multiplier_field(key),
                    bound: "> 0",
                });
            }
        }
        Ok(())
    }

    /// Applies overrides from a key/value document on top of the defaults.
    pub fn from_kv(doc: &KvDocument) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for key in doc.keys() {
            match key {
                "window_n" => cfg.window_n = req(doc, key)?,
                "sim_threshold" => cfg.sim_threshold = req(doc, key)?,
                "time_threshold_ms" => cfg.time_threshold_ms = req(doc, key)?,
                "entropy_threshold_bits" => cfg.entropy_threshold_bits = req(doc, key)?,
                "sentiment_threshold" => cfg.sentiment_threshold = req(doc, key)?,
                "sentiment_mode" => cfg.sentiment_mode = req(doc, key)?,
                "high_score_threshold" => cfg.high_score_threshold = req(doc, key)?,
                other => {
                    let slot = other
                        .strip_prefix("multipliers.")
                        .and_then(|m| cfg.multipliers.slot(m))
                        .ok_or_else(|| KvError::UnknownKey(other.to_string()))?;
                    *slot = req(doc, key)?;
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_kv(&self) -> KvDocument {
        let mut doc = KvDocument::default();
        doc.insert("window_n", self.window_n.to_string());
        doc.insert("sim_threshold", self.sim_threshold.to_string());
        doc.insert("time_threshold_ms", self.time_threshold_ms.to_string());
        doc.insert(
            "entropy_threshold_bits",
            self.entropy_threshold_bits.to_string(),
        );
        doc.insert("sentiment_threshold", self.sentiment_threshold.to_string());
        doc.insert("sentiment_mode", self.sentiment_mode.as_str());
        doc.insert(
            "high_score_threshold",
            self.high_score_threshold.to_string(),
        );
        for (key, value) in Multipliers::KEYS.iter().zip(self.multipliers.values()) {
            doc.insert(format!("multipliers.{key}"), value.to_string());
        }
        doc
    }

    /// Best possible raw score against `n` neighbors.
    pub fn max_score(&self, n: usize) -> f64 {
        // per-term products keep the default total exact (13.6 is not representable)
        let n = n as f64;
        self.multipliers.values().iter().map(|m| m * n).sum()
    }
}

fn req<T: std::str::FromStr>(doc: &KvDocument, key: &str) -> Result<T, ConfigError> {
    Ok(doc.parse_value(key)?.expect("key comes from the document"))
}

fn multiplier_field(key: &str) -> &'static str {
    match key {
        "similarity" => "multipliers.similarity",
        "time_difference" => "multipliers.time_difference",
        "similarity_sum" => "multipliers.similarity_sum",
        "language" => "multipliers.language",
        "gender" => "multipliers.gender",
        "user_agent" => "multipliers.user_agent",
        "time_zone" => "multipliers.time_zone",
        "location" => "multipliers.location",
        "profile_url" => "multipliers.profile_url",
        "profile_description" => "multipliers.profile_description",
        "entropy" => "multipliers.entropy",
        _ => "multipliers.sentiment",
    }
}

/// Loads a config file over the defaults, or returns the defaults.
pub fn load_config(path: Option<&Path>) -> Result<DetectionConfig, ConfigError> {
    let Some(path) = path else {
        return Ok(DetectionConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    DetectionConfig::from_kv(&KvDocument::parse(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<DetectionConfig, ConfigError> {
        DetectionConfig::from_kv(&KvDocument::parse(text).unwrap())
    }

    #[test]
    fn defaults() {
        let cfg = load_config(None).unwrap();
        assert_eq!(cfg.window_n, 20);
        assert_eq!(cfg.sim_threshold, 0.6);
        assert_eq!(cfg.time_threshold_ms, 4000);
        assert_eq!(cfg.high_score_threshold, 0.25);
        assert_eq!(cfg.multipliers.similarity, 2.0);
        assert_eq!(cfg.multipliers.similarity_sum, 1.2);
        assert_eq!(cfg.multipliers.time_difference, 1.0);
        assert_eq!(cfg.max_score(20), 272.0);
        cfg.validate().unwrap();
    }

    #[test]
    fn override_threshold() {
        let cfg = parse("high_score_threshold = 0.30\nmultipliers.location = 0.5\n").unwrap();
        assert_eq!(cfg.high_score_threshold, 0.30);
        assert_eq!(cfg.multipliers.location, 0.5);
        assert_eq!(cfg.window_n, 20);
    }

    #[test]
    fn out_of_range_names_field_and_bound() {
        let err = parse("sim_threshold = 1.5").unwrap_err();
        assert_eq!(err.to_string(), "sim_threshold must be in [0,1]");
        let err = parse("window_n = 0").unwrap_err();
        assert_eq!(err.to_string(), "window_n must be >= 1");
        let err = parse("multipliers.gender = 0").unwrap_err();
        assert_eq!(err.to_string(), "multipliers.gender must be > 0");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(
            parse("multipliers.shoe_size = 1"),
            Err(ConfigError::Format(KvError::UnknownKey(_)))
        ));
        assert!(matches!(parse("windw_n = 3"), Err(ConfigError::Format(_))));
    }

    #[test]
    fn kv_round_trip() {
        let mut cfg = DetectionConfig {
            window_n: 7,
            sentiment_mode: SentimentMode::Signed,
            ..DetectionConfig::default()
        };
        cfg.multipliers.time_zone = 0.25;
        assert_eq!(DetectionConfig::from_kv(&cfg.to_kv()).unwrap(), cfg);
    }
}
