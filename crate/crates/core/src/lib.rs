//! Streaming detection of coordinated bot activity on Twitter-like streams.
//!
//! Each tweet is compared against the `N` tweets that arrived immediately
//! before it. Twelve cheap per-neighbor comparisons (text similarity, burst
//! timing, shared profile fields, entropy and sentiment flags) are weighted,
//! summed and expressed as a fraction of the best possible score. Tweets whose
//! fraction reaches the high-score threshold are flagged as part of a bot-net.
//!
//! The crate is organised around the pipeline stages:
//!
//! * [`ingest`] parses newline-delimited tweet records and reports stream statistics.
//! * [`features`] derives comparable attributes (similarity, entropy, sentiment, gender).
//! * [`scorer`] keeps the sliding window and produces per-tweet [`ScoreBreakdown`]s.
//! * [`analysis`] holds the tuning tools: N-sweeps, score histograms and 1-D k-means.
//! * [`synth`] generates labeled synthetic streams and evaluates detections against them.
//! * [`output`] renders breakdowns as NDJSON or CSV.

pub mod analysis;
mod clock;
pub mod features;
pub mod ingest;
pub mod kv;
pub mod output;
pub mod scorer;
pub mod synth;

pub use features::{AttributeVector, GenderLexicon, Lexicons, SentimentLexicon};
pub use ingest::{ParseError, StreamStats, TweetRecord};
pub use scorer::{
    process_stream, DetectionConfig, DetectionReport, Detector, ScoreBreakdown, ScoredTweet,
};
