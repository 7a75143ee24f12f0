//! Sliding-window scoring.
//!
//! Every tweet is compared against the `window_n` tweets that arrived just
//! before it. Twelve comparisons are weighted and summed into a raw score,
//! which is divided by the best achievable score for the current window size.
//! A tweet is flagged when that fraction reaches `high_score_threshold`.

mod config;

use std::collections::{HashSet, VecDeque};
use std::time::Duration;

use serde::Serialize;

pub use config::{load_config, ConfigError, DetectionConfig, Multipliers, SentimentMode};

use crate::clock::Stopwatch;
use crate::features::{derive_attributes, prepared_similarity, AttributeVector, Lexicons};
use crate::ingest::TweetRecord;

/// Raw per-attribute evidence for one tweet against its window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Evidence {
    /// Window size `n` the tweet was scored against.
    pub neighbors: usize,
    pub sim_count: usize,
    /// Similar neighbors whose timestamps are within the burst window.
    pub time_count: usize,
    pub sim_sum: f64,
    pub lang_count: usize,
    pub gender_count: usize,
    pub user_agent_count: usize,
    pub time_zone_count: usize,
    pub location_count: usize,
    pub profile_url_count: usize,
    pub profile_description_count: usize,
    pub entropy_flag: bool,
    pub sentiment_flag: bool,
}

impl Evidence {
    /// Weighted total. The two flags contribute `n * weight` when set.
    pub fn raw_score(&self, m: &Multipliers) -> f64 {
        let n = self.neighbors as f64;
        let flag = |set: bool, w: f64| if set { w * n } else { 0.0 };
        m.similarity * self.sim_count as f64
            + m.time_difference * self.time_count as f64
            + m.similarity_sum * self.sim_sum
            + m.language * self.lang_count as f64
            + m.gender * self.gender_count as f64
            + m.user_agent * self.user_agent_count as f64
            + m.time_zone * self.time_zone_count as f64
            + m.location * self.location_count as f64
            + m.profile_url * self.profile_url_count as f64
            + m.profile_description * self.profile_description_count as f64
            + flag(self.entropy_flag, m.entropy)
            + flag(self.sentiment_flag, m.sentiment)
    }

    pub fn finish(self, cfg: &DetectionConfig) -> ScoreBreakdown {
        if self.neighbors == 0 {
            return ScoreBreakdown::first_in_stream();
        }
        let raw_score = self.raw_score(&cfg.multipliers);
        let max_score = cfg.max_score(self.neighbors);
        let percentage = raw_score / max_score;
        ScoreBreakdown {
            evidence: self,
            raw_score,
            max_score,
            percentage,
            is_bot: percentage >= cfg.high_score_threshold,
        }
    }
}

/// Evidence plus the weighted total and the classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    #[serde(flatten)]
    pub evidence: Evidence,
    pub raw_score: f64,
    /// Zero only for the sentinel emitted before any neighbor exists.
    pub max_score: f64,
    pub percentage: f64,
    pub is_bot: bool,
}

impl ScoreBreakdown {
    /// Result for a tweet with no predecessors: nothing to compare, never flagged.
    pub fn first_in_stream() -> Self {
        Self {
            evidence: Evidence::default(),
            raw_score: 0.0,
            max_score: 0.0,
            percentage: 0.0,
            is_bot: false,
        }
    }
}

/// The most recent `capacity` attribute vectors, oldest first.
#[derive(Debug, Clone)]
pub struct Window {
    items: VecDeque<AttributeVector>,
    capacity: usize,
}

impl Window {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "window capacity must be at least 1");
        Self {
            items: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn push(&mut self, attrs: AttributeVector) {
        if self.items.len() == self.capacity {
            self.items.pop_front();
        }
        self.items.push_back(attrs);
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn iter(&self) -> impl Iterator<Item = &AttributeVector> {
        self.items.iter()
    }
}

impl Extend<AttributeVector> for Window {
    fn extend<I: IntoIterator<Item = AttributeVector>>(&mut self, iter: I) {
        for a in iter {
            self.push(a);
        }
    }
}

fn same<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> bool {
    matches!((a, b), (Some(x), Some(y)) if x == y)
}

/// Gathers evidence for `target` against every neighbor yielded by `neighbors`.
pub fn collect_evidence<'a>(
    target: &AttributeVector,
    neighbors: impl IntoIterator<Item = &'a AttributeVector>,
    cfg: &DetectionConfig,
) -> Evidence {
    let mut ev = Evidence::default();
    for w in neighbors {
        ev.neighbors += 1;
        let sim = prepared_similarity(&target.text, &w.text);
        ev.sim_sum += sim;
        if sim >= cfg.sim_threshold {
            ev.sim_count += 1;
            if (target.timestamp_ms - w.timestamp_ms).abs() <= cfg.time_threshold_ms {
                ev.time_count += 1;
            }
        }
        ev.lang_count += usize::from(same(&target.lang, &w.lang));
        ev.gender_count += usize::from(same(&target.gender, &w.gender));
        ev.user_agent_count += usize::from(same(&target.user_agent, &w.user_agent));
        ev.time_zone_count += usize::from(same(&target.time_zone, &w.time_zone));
        ev.location_count += usize::from(same(&target.location, &w.location));
        ev.profile_url_count += usize::from(same(&target.profile_url, &w.profile_url));
        ev.profile_description_count +=
            usize::from(same(&target.profile_description, &w.profile_description));
    }
    ev.entropy_flag = target.entropy_bits < cfg.entropy_threshold_bits;
    ev.sentiment_flag = match cfg.sentiment_mode {
        SentimentMode::Absolute => target.sentiment.abs() > cfg.sentiment_threshold,
        SentimentMode::Signed => target.sentiment > cfg.sentiment_threshold,
    };
    ev
}

/// Scores `target` against a non-empty window. Returns `None` for an empty window.
pub fn score_against_window(
    target: &AttributeVector,
    window: &Window,
    cfg: &DetectionConfig,
) -> Option<ScoreBreakdown> {
    if window.is_empty() {
        return None;
    }
    Some(collect_evidence(target, window.iter(), cfg).finish(cfg))
}

/// One scored stream element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredTweet {
    pub tweet_id: String,
    pub user_id: String,
    #[serde(flatten)]
    pub breakdown: ScoreBreakdown,
}

/// Aggregate results of a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DetectionReport {
    pub tweets: u64,
    pub flagged: u64,
    pub unique_accounts: u64,
    /// Records whose timestamp went backwards relative to their predecessor.
    pub out_of_order: u64,
    pub elapsed_ms: f64,
    pub tweets_per_sec: f64,
}

/// Incremental detector: feed records in stream order, one at a time.
#[derive(Debug)]
pub struct Detector {
    cfg: DetectionConfig,
    lexicons: Lexicons,
    window: Window,
    tweets: u64,
    flagged: u64,
    flagged_users: HashSet<String>,
    out_of_order: u64,
    last_timestamp: Option<i64>,
    busy: Duration,
}

impl Detector {
    /// The config must already be valid; see [`DetectionConfig::validate`].
    pub fn new(cfg: DetectionConfig, lexicons: Lexicons) -> Self {
        Self {
            window: Window::new(cfg.window_n),
            cfg,
            lexicons,
            tweets: 0,
            flagged: 0,
            flagged_users: HashSet::new(),
            out_of_order: 0,
            last_timestamp: None,
            busy: Duration::ZERO,
        }
    }

    pub fn config(&self) -> &DetectionConfig {
        &self.cfg
    }

    /// Scores `record` against the current window, then slides it in.
    pub fn push(&mut self, record: &TweetRecord) -> ScoredTweet {
        let started = Stopwatch::start();
        let attrs = derive_attributes(record, &self.lexicons);
        let breakdown = score_against_window(&attrs, &self.window, &self.cfg)
            .unwrap_or_else(ScoreBreakdown::first_in_stream);
        self.window.push(attrs);
        self.busy += started.elapsed();

        self.tweets += 1;
        if self.last_timestamp.is_some_and(|t| record.timestamp_ms < t) {
            self.out_of_order += 1;
        }
        self.last_timestamp = Some(record.timestamp_ms);
        if breakdown.is_bot {
            self.flagged += 1;
            if !self.flagged_users.contains(&record.user_id) {
                self.flagged_users.insert(record.user_id.clone());
            }
        }
        ScoredTweet {
            tweet_id: record.tweet_id.clone(),
            user_id: record.user_id.clone(),
            breakdown,
        }
    }

    /// Totals so far. Timing covers attribute derivation and scoring only.
    pub fn report(&self) -> DetectionReport {
        let secs = self.busy.as_secs_f64();
        DetectionReport {
            tweets: self.tweets,
            flagged: self.flagged,
            unique_accounts: self.flagged_users.len() as u64,
            out_of_order: self.out_of_order,
            elapsed_ms: secs * 1000.0,
            tweets_per_sec: if secs > 0.0 {
                self.tweets as f64 / secs
            } else {
                0.0
            },
        }
    }
}

/// Scores a whole stream in order.
pub fn process_stream(
    records: &[TweetRecord],
    cfg: &DetectionConfig,
    lexicons: &Lexicons,
) -> (Vec<ScoredTweet>, DetectionReport) {
    let mut detector = Detector::new(cfg.clone(), lexicons.clone());
    let scored = records.iter().map(|r| detector.push(r)).collect();
    (scored, detector.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{Gender, PreparedText};

    fn attrs(text: &str, t: i64) -> AttributeVector {
        AttributeVector {
            text: PreparedText::new(text),
            timestamp_ms: t,
            lang: Some("en".into()),
            gender: Some(Gender::Female),
            user_agent: Some("Bot Client".into()),
            time_zone: Some("UTC".into()),
            location: Some("Here".into()),
            profile_url: Some("http://spam.example".into()),
            profile_description: Some("buy now".into()),
            entropy_bits: 2.0,
            sentiment: 0.0,
        }
    }

    fn blank(text: &str, t: i64) -> AttributeVector {
        AttributeVector {
            lang: None,
            gender: None,
            user_agent: None,
            time_zone: None,
            location: None,
            profile_url: None,
            profile_description: None,
            entropy_bits: 4.0,
            ..attrs(text, t)
        }
    }

    #[test]
    fn worked_example_totals() {
        let ev = Evidence {
            neighbors: 20,
            sim_count: 17,
            time_count: 14,
            sim_sum: 14.9582,
            lang_count: 15,
            gender_count: 7,
            user_agent_count: 16,
            time_zone_count: 8,
            location_count: 0,
            profile_url_count: 17,
            profile_description_count: 16,
            entropy_flag: true,
            sentiment_flag: false,
        };
        let b = ev.finish(&DetectionConfig::default());
        assert!((b.raw_score - 168.94984).abs() < 1e-9, "{}", b.raw_score);
        assert_eq!(b.max_score, 272.0);
        assert!((b.percentage - 0.621).abs() < 5e-4);
        assert!(b.is_bot);
    }

    #[test]
    fn identical_window_scores_0_912() {
        let cfg = DetectionConfig::default();
        let mut w = Window::new(20);
        w.extend((0..20).map(|_| attrs("aaaa", 100)));
        let b = score_against_window(&attrs("aaaa", 100), &w, &cfg).unwrap();
        assert_eq!(b.evidence.sim_count, 20);
        assert_eq!(b.evidence.time_count, 20);
        assert_eq!(b.evidence.sim_sum, 20.0);
        assert!(b.evidence.entropy_flag && !b.evidence.sentiment_flag);
        assert!((b.raw_score - 248.0).abs() < 1e-9);
        assert!((b.percentage - 248.0 / 272.0).abs() < 1e-12);
    }

    #[test]
    fn nothing_shared_scores_zero() {
        let cfg = DetectionConfig::default();
        let mut w = Window::new(20);
        w.extend((0..20).map(|_| blank("efgh", 0)));
        let b = score_against_window(&blank("abcd", 10_000), &w, &cfg).unwrap();
        assert_eq!(b.raw_score, 0.0);
        assert_eq!(b.percentage, 0.0);
        assert!(!b.is_bot);
    }

    #[test]
    fn absent_never_matches() {
        let cfg = DetectionConfig::default();
        let mut w = Window::new(5);
        w.extend((0..5).map(|_| blank("x", 0)));
        let ev = collect_evidence(&blank("x", 0), w.iter(), &cfg);
        assert_eq!(
            ev.lang_count + ev.gender_count + ev.user_agent_count + ev.time_zone_count,
            0
        );
        assert_eq!(
            ev.location_count + ev.profile_url_count + ev.profile_description_count,
            0
        );
    }

    #[test]
    fn time_count_only_counts_similar_neighbors() {
        let cfg = DetectionConfig::default();
        let neighbors = [
            blank("same text", 0),
            blank("zzzz", 0),
            blank("same text", 9_000),
        ];
        let ev = collect_evidence(&blank("same text", 1_000), neighbors.iter(), &cfg);
        assert_eq!(ev.sim_count, 2);
        assert_eq!(ev.time_count, 1);
    }

    #[test]
    fn exact_threshold_tie_is_bot() {
        let mut cfg = DetectionConfig::default();
        let ev = Evidence {
            neighbors: 1,
            lang_count: 1,
            ..Evidence::default()
        };
        cfg.high_score_threshold = 1.0 / 13.6;
        assert!(ev.finish(&cfg).is_bot);
    }

    #[test]
    fn sentiment_modes() {
        let mut cfg = DetectionConfig::default();
        let mut target = blank("x", 0);
        target.sentiment = -0.8;
        let n = [blank("y", 0)];
        assert!(collect_evidence(&target, n.iter(), &cfg).sentiment_flag);
        cfg.sentiment_mode = SentimentMode::Signed;
        assert!(!collect_evidence(&target, n.iter(), &cfg).sentiment_flag);
    }

    #[test]
    fn warm_up_scales_max_score() {
        let cfg = DetectionConfig::default();
        let mut w = Window::new(20);
        w.extend((0..3).map(|_| blank("q", 0)));
        let b = score_against_window(&blank("r", 0), &w, &cfg).unwrap();
        assert!((b.max_score - 13.6 * 3.0).abs() < 1e-9);
        assert!(score_against_window(&blank("r", 0), &Window::new(2), &cfg).is_none());
    }

    #[test]
    fn window_evicts_oldest() {
        let mut w = Window::new(2);
        w.extend([blank("a", 1), blank("b", 2), blank("c", 3)]);
        let ts: Vec<i64> = w.iter().map(|a| a.timestamp_ms).collect();
        assert_eq!(ts, vec![2, 3]);
    }
}
