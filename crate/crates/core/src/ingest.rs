//! Newline-delimited tweet ingestion.
//!
//! Each input line is one status object in the shape of the streaming API:
//!
//! ```json
//! {"id_str":"1","timestamp_ms":"1454321098765","text":"hello","lang":"en",
//!  "source":"Twitter for iPhone",
//!  "user":{"id_str":"42","name":"John Smith","time_zone":"Eastern Time (US & Canada)",
//!          "location":"NYC","url":"http://example.com","description":"hi"}}
//! ```
//!
//! A flat layout with `user_id`, `user_name`, `user_time_zone`, `user_location`,
//! `user_url` and `user_description` at the top level is also accepted. Unknown
//! keys are ignored. Records are never re-sorted; stream order is trusted.

use std::io::BufRead;

use chrono::DateTime;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

/// Longest accepted tweet body, in code points.
pub const MAX_TEXT_CHARS: usize = 280;

const TWITTER_DATE_FORMAT: &str = "%a %b %d %H:%M:%S %z %Y";
const PARSE_CHUNK: usize = 4096;

/// One chronological stream element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub user_id: String,
    pub timestamp_ms: i64,
    pub text: String,
    pub lang: Option<String>,
    /// Client application string, used as the user-agent attribute.
    pub source: Option<String>,
    pub user_name: Option<String>,
    pub time_zone: Option<String>,
    pub location: Option<String>,
    pub profile_url: Option<String>,
    pub profile_description: Option<String>,
}

/// Why a line was rejected. Callers count these as malformed and move on.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseError {
    #[error("line is not valid UTF-8")]
    InvalidUtf8,
    #[error("line is not valid JSON")]
    InvalidJson,
    #[error("record is not a JSON object")]
    NotAnObject,
    #[error("missing tweet id")]
    MissingTweetId,
    #[error("missing user id")]
    MissingUserId,
    #[error("missing timestamp")]
    MissingTimestamp,
    #[error("timestamp is not a positive millisecond value")]
    InvalidTimestamp,
    #[error("missing text")]
    MissingText,
    #[error("text longer than {MAX_TEXT_CHARS} characters")]
    TextTooLong,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StreamStats {
    pub tweet_count: u64,
    /// Latest minus earliest timestamp.
    pub period_ms: i64,
    pub malformed_count: u64,
}

/// Parses one input line.
pub fn parse_record(line: &str) -> Result<TweetRecord, ParseError> {
    let value: Value = serde_json::from_str(line).map_err(|_| ParseError::InvalidJson)?;
    let obj = value.as_object().ok_or(ParseError::NotAnObject)?;
    let user = obj.get("user").and_then(Value::as_object);

    let user_field = |nested: &str, flat: &str| -> Option<String> {
        user.and_then(|u| string_field(u, nested))
            .or_else(|| string_field(obj, flat))
    };

    let tweet_id = id_field(obj, "id_str", "id").ok_or(ParseError::MissingTweetId)?;
    let user_id = user
        .and_then(|u| id_field(u, "id_str", "id"))
        .or_else(|| id_field(obj, "user_id", "user_id_str"))
        .ok_or(ParseError::MissingUserId)?;
    let timestamp_ms = timestamp_field(obj)?;

    let text = match obj.get("text").or_else(|| obj.get("full_text")) {
        Some(Value::String(s)) => s.trim().to_string(),
        _ => return Err(ParseError::MissingText),
    };
    if text.chars().count() > MAX_TEXT_CHARS {
        return Err(ParseError::TextTooLong);
    }

    Ok(TweetRecord {
        tweet_id,
        user_id,
        timestamp_ms,
        text,
        lang: string_field(obj, "lang"),
        source: string_field(obj, "source"),
        user_name: user_field("name", "user_name"),
        time_zone: user_field("time_zone", "user_time_zone"),
        location: user_field("location", "user_location"),
        profile_url: user_field("url", "user_url"),
        profile_description: user_field("description", "user_description"),
    })
}

/// Parses raw bytes, rejecting invalid UTF-8 instead of panicking.
pub fn parse_record_bytes(line: &[u8]) -> Result<TweetRecord, ParseError> {
    let s = std::str::from_utf8(line).map_err(|_| ParseError::InvalidUtf8)?;
    parse_record(s)
}

fn string_field(obj: &Map<String, Value>, key: &str) -> Option<String> {
    match obj.get(key) {
        Some(Value::String(s)) => normalize_optional(s),
        _ => None,
    }
}

fn id_field(obj: &Map<String, Value>, str_key: &str, num_key: &str) -> Option<String> {
    string_field(obj, str_key).or_else(|| match obj.get(num_key) {
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(Value::String(s)) => normalize_optional(s),
        _ => None,
    })
}

fn timestamp_field(obj: &Map<String, Value>) -> Result<i64, ParseError> {
    let ms = match obj.get("timestamp_ms") {
        Some(Value::Number(n)) => Some(n.as_i64().ok_or(ParseError::InvalidTimestamp)?),
        Some(Value::String(s)) if !s.trim().is_empty() => Some(
            s.trim()
                .parse::<i64>()
                .map_err(|_| ParseError::InvalidTimestamp)?,
        ),
        _ => None,
    };
    let ms = match ms {
        Some(ms) => ms,
        None => match obj.get("created_at") {
            Some(Value::String(s)) => parse_created_at(s).ok_or(ParseError::InvalidTimestamp)?,
            _ => return Err(ParseError::MissingTimestamp),
        },
    };
    if ms <= 0 {
        return Err(ParseError::InvalidTimestamp);
    }
    Ok(ms)
}

/// Accepts the API's `Mon Feb 01 10:04:58 +0000 2016` form, then RFC 3339.
pub fn parse_created_at(s: &str) -> Option<i64> {
    let s = s.trim();
    DateTime::parse_from_str(s, TWITTER_DATE_FORMAT)
        .or_else(|_| DateTime::parse_from_rfc3339(s))
        .ok()
        .map(|dt| dt.timestamp_millis())
}

/// Trims whitespace; empty after trimming means absent.
pub fn normalize_optional(s: &str) -> Option<String> {
    let t = s.trim();
    (!t.is_empty()).then(|| t.to_string())
}

#[derive(Serialize)]
struct WireUser<'a> {
    id_str: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_zone: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    location: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    url: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<&'a str>,
}

#[derive(Serialize)]
struct WireTweet<'a> {
    id_str: &'a str,
    timestamp_ms: String,
    created_at: String,
    text: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lang: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
    user: WireUser<'a>,
}

impl TweetRecord {
    /// Serializes to one NDJSON line (no trailing newline) in the nested input layout.
    pub fn to_json_line(&self) -> String {
        let created_at = DateTime::from_timestamp_millis(self.timestamp_ms)
            .map(|dt| dt.format(TWITTER_DATE_FORMAT).to_string())
            .unwrap_or_default();
        let wire = WireTweet {
            id_str: &self.tweet_id,
            timestamp_ms: self.timestamp_ms.to_string(),
            created_at,
            text: &self.text,
            lang: self.lang.as_deref(),
            source: self.source.as_deref(),
            user: WireUser {
                id_str: &self.user_id,
                name: self.user_name.as_deref(),
                time_zone: self.time_zone.as_deref(),
                location: self.location.as_deref(),
                url: self.profile_url.as_deref(),
                description: self.profile_description.as_deref(),
            },
        };
        serde_json::to_string(&wire).expect("tweet serialization is infallible")
    }
}

/// Count, period and malformed tally for a parsed stream.
pub fn stream_stats(records: &[TweetRecord], malformed_count: u64) -> StreamStats {
    let (min, max) = records
        .iter()
        .map(|r| r.timestamp_ms)
        .fold((i64::MAX, i64::MIN), |(lo, hi), t| (lo.min(t), hi.max(t)));
    StreamStats {
        tweet_count: records.len() as u64,
        period_ms: if records.is_empty() { 0 } else { max - min },
        malformed_count,
    }
}

/// Number of records whose timestamp is earlier than their predecessor's.
pub fn out_of_order_count(records: &[TweetRecord]) -> u64 {
    records
        .windows(2)
        .filter(|w| w[1].timestamp_ms < w[0].timestamp_ms)
        .count() as u64
}

/// Formats a duration as `4h 45m 15s`, dropping leading zero units.
pub fn format_period(period_ms: i64) -> String {
    let total = period_ms.max(0) / 1000;
    let (h, m, s) = (total / 3600, (total % 3600) / 60, total % 60);
    if h > 0 {
        format!("{h}h {m}m {s}s")
    } else if m > 0 {
        format!("{m}m {s}s")
    } else {
        format!("{s}s")
    }
}

/// A fully parsed input, in input order.
#[derive(Debug, Default)]
pub struct ParsedStream {
    pub records: Vec<TweetRecord>,
    /// 1-based line number and reason for every rejected line.
    pub malformed: Vec<(usize, ParseError)>,
}

impl ParsedStream {
    pub fn stats(&self) -> StreamStats {
        stream_stats(&self.records, self.malformed.len() as u64)
    }
}

/// Reads and parses a whole stream. Lines are parsed in parallel chunks and
/// merged back in input order. Blank lines are skipped silently.
pub fn read_stream<R: BufRead>(mut reader: R) -> std::io::Result<ParsedStream> {
    let mut out = ParsedStream::default();
    let mut chunk: Vec<(usize, Vec<u8>)> = Vec::with_capacity(PARSE_CHUNK);
    let mut line_no = 0usize;
    loop {
        let mut buf = Vec::new();
        let n = reader.read_until(b'\n', &mut buf)?;
        if n > 0 {
            line_no += 1;
            if !buf.iter().all(u8::is_ascii_whitespace) {
                chunk.push((line_no, buf));
            }
        }
        if chunk.len() >= PARSE_CHUNK || (n == 0 && !chunk.is_empty()) {
            let parsed: Vec<_> = chunk
                .par_iter()
                .map(|(no, bytes)| (*no, parse_record_bytes(bytes)))
                .collect();
            for (no, res) in parsed {
                match res {
                    Ok(r) => out.records.push(r),
                    Err(e) => out.malformed.push((no, e)),
                }
            }
            chunk.clear();
        }
        if n == 0 {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"{"id_str":"10","timestamp_ms":"1454321098765","created_at":"Mon Feb 01 10:04:58 +0000 2016","text":"hello world","lang":"en","source":"Twitter for iPhone","user":{"id_str":"7","name":"John Smith","time_zone":"Eastern Time (US & Canada)","location":"   ","url":"http://x.co","description":"just me"}}"#;

    #[test]
    fn copies_millisecond_timestamp() {
        let r = parse_record(FULL).unwrap();
        assert_eq!(r.timestamp_ms, 1_454_321_098_765);
        assert_eq!(r.tweet_id, "10");
        assert_eq!(r.user_id, "7");
        assert_eq!(r.user_name.as_deref(), Some("John Smith"));
    }

    #[test]
    fn whitespace_location_is_absent() {
        let r = parse_record(FULL).unwrap();
        assert_eq!(r.location, None);
    }

    #[test]
    fn missing_text_is_reported() {
        let line = r#"{"id_str":"1","timestamp_ms":5,"user":{"id_str":"2"}}"#;
        assert_eq!(parse_record(line), Err(ParseError::MissingText));
    }

    #[test]
    fn reason_codes_for_other_missing_fields() {
        assert_eq!(
            parse_record(r#"{"timestamp_ms":5,"text":"x","user":{"id_str":"2"}}"#),
            Err(ParseError::MissingTweetId)
        );
        assert_eq!(
            parse_record(r#"{"id_str":"1","timestamp_ms":5,"text":"x"}"#),
            Err(ParseError::MissingUserId)
        );
        assert_eq!(
            parse_record(r#"{"id_str":"1","text":"x","user":{"id_str":"2"}}"#),
            Err(ParseError::MissingTimestamp)
        );
        assert_eq!(
            parse_record(r#"{"id_str":"1","timestamp_ms":"0","text":"x","user":{"id_str":"2"}}"#),
            Err(ParseError::InvalidTimestamp)
        );
        assert_eq!(parse_record("[1,2]"), Err(ParseError::NotAnObject));
        assert_eq!(parse_record("{nope"), Err(ParseError::InvalidJson));
        assert_eq!(
            parse_record_bytes(&[0xff, 0xfe]),
            Err(ParseError::InvalidUtf8)
        );
    }

    #[test]
    fn falls_back_to_created_at() {
        let line = r#"{"id_str":"1","created_at":"Mon Feb 01 10:04:58 +0000 2016","text":"x","user":{"id_str":"2"}}"#;
        assert_eq!(parse_record(line).unwrap().timestamp_ms, 1_454_321_098_000);
    }

    #[test]
    fn accepts_flat_layout_and_numeric_ids() {
        let line =
            r#"{"id":99,"user_id":"u1","timestamp_ms":1000,"text":"x","user_location":"Paris"}"#;
        let r = parse_record(line).unwrap();
        assert_eq!(r.tweet_id, "99");
        assert_eq!(r.user_id, "u1");
        assert_eq!(r.location.as_deref(), Some("Paris"));
    }

    #[test]
    fn rejects_overlong_text() {
        let text = "a".repeat(MAX_TEXT_CHARS + 1);
        let line =
            format!(r#"{{"id_str":"1","timestamp_ms":1,"text":"{text}","user":{{"id_str":"2"}}}}"#);
        assert_eq!(parse_record(&line), Err(ParseError::TextTooLong));
    }

    #[test]
    fn stats_of_small_streams() {
        let mk = |t| TweetRecord {
            tweet_id: "1".into(),
            user_id: "1".into(),
            timestamp_ms: t,
            text: String::new(),
            lang: None,
            source: None,
            user_name: None,
            time_zone: None,
            location: None,
            profile_url: None,
            profile_description: None,
        };
        assert_eq!(stream_stats(&[], 0), StreamStats::default());
        let one = stream_stats(&[mk(77)], 0);
        assert_eq!((one.tweet_count, one.period_ms), (1, 0));
        let two = stream_stats(&[mk(5000), mk(1)], 3);
        assert_eq!(
            (two.tweet_count, two.period_ms, two.malformed_count),
            (2, 4999, 3)
        );
        assert_eq!(out_of_order_count(&[mk(5000), mk(1)]), 1);
    }

    #[test]
    fn period_formatting() {
        assert_eq!(format_period(51_000), "51s");
        assert_eq!(format_period(26 * 60_000 + 43_000), "26m 43s");
        assert_eq!(
            format_period((4 * 3600 + 45 * 60 + 15) * 1000),
            "4h 45m 15s"
        );
        assert_eq!(format_period(3_600_000 + 5_000), "1h 0m 5s");
        assert_eq!(format_period(999), "0s");
    }

    #[test]
    fn read_stream_keeps_order_and_counts_malformed() {
        let input = format!("{FULL}\n\nnot json\n{FULL}\n");
        let parsed = read_stream(input.as_bytes()).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.malformed, vec![(3, ParseError::InvalidJson)]);
        assert_eq!(parsed.stats().malformed_count, 1);
    }
}
