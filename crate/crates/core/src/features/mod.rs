//! Per-tweet comparable attributes.

mod entropy;
mod lexicon;
mod similarity;

use std::sync::Arc;

use unicode_normalization::UnicodeNormalization;

pub use entropy::entropy_bits;
pub use lexicon::{Gender, GenderLexicon, LexiconError, SentimentLexicon, MAX_VALENCE};
pub use similarity::{matched_chars, prepared_similarity, similarity, PreparedText};

use crate::ingest::TweetRecord;

/// Both lexicons, shared read-only across the pipeline.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub sentiment: Arc<SentimentLexicon>,
    pub gender: Arc<GenderLexicon>,
}

impl Lexicons {
    pub fn new(sentiment: SentimentLexicon, gender: GenderLexicon) -> Self {
        Self {
            sentiment: Arc::new(sentiment),
            gender: Arc::new(gender),
        }
    }

    pub fn bundled() -> Self {
        Self::new(SentimentLexicon::bundled(), GenderLexicon::bundled())
    }
}

impl Default for Lexicons {
    fn default() -> Self {
        Self::bundled()
    }
}

/// The attributes of one tweet that get compared against its neighbors.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeVector {
    /// NFC-normalized text.
    pub text: PreparedText,
    pub timestamp_ms: i64,
    pub lang: Option<String>,
    pub gender: Option<Gender>,
    pub user_agent: Option<String>,
    pub time_zone: Option<String>,
    pub location: Option<String>,
    pub profile_url: Option<String>,
    pub profile_description: Option<String>,
    pub entropy_bits: f64,
    pub sentiment: f64,
}

/// Lexicon polarity in `[-1, 1]`: mean valence of matched tokens divided by 5.
///
/// Tokens are whitespace-separated, trimmed of surrounding punctuation and
/// lowercased. No matched tokens scores 0.
pub fn sentiment(text: &str, lexicon: &SentimentLexicon) -> f64 {
    let mut sum = 0i64;
    let mut matched = 0i64;
    for raw in text.split_whitespace() {
        let token = raw.trim_matches(|c: char| !c.is_alphanumeric());
        if token.is_empty() {
            continue;
        }
        if let Some(v) = lexicon.valence(&token.to_lowercase()) {
            sum += i64::from(v);
            matched += 1;
        }
    }
    if matched == 0 {
        return 0.0;
    }
    sum as f64 / (f64::from(MAX_VALENCE) * matched as f64)
}

/// Gender of the first token of a display name, if the lexicon knows it.
pub fn derive_gender(user_name: Option<&str>, lexicon: &GenderLexicon) -> Option<Gender> {
    let first = user_name?.split_whitespace().next()?;
    lexicon.lookup(first)
}

pub fn derive_attributes(record: &TweetRecord, lexicons: &Lexicons) -> AttributeVector {
    let text: String = record.text.nfc().collect();
    AttributeVector {
        entropy_bits: entropy_bits(&text),
        sentiment: sentiment(&text, &lexicons.sentiment),
        text: PreparedText::new(&text),
        timestamp_ms: record.timestamp_ms,
        lang: record.lang.clone(),
        gender: derive_gender(record.user_name.as_deref(), &lexicons.gender),
        user_agent: record.source.clone(),
        time_zone: record.time_zone.clone(),
        location: record.location.clone(),
        profile_url: record.profile_url.clone(),
        profile_description: record.profile_description.clone(),
    }
}
