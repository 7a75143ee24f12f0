//! Threshold tuning tools: N-sweeps, score histograms, 1-D k-means.

mod kmeans;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use kmeans::{kmeans_1d, ClusterResult, MAX_ITERATIONS, TOLERANCE};

use crate::clock::Stopwatch;
use crate::features::Lexicons;
use crate::ingest::TweetRecord;
use crate::scorer::{process_stream, DetectionConfig};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("at least one window size is required")]
    NoWindowSizes,
    #[error("window size must be >= 1")]
    ZeroWindow,
    #[error("bin width must be in (0, 1], got {0}")]
    BinWidth(f64),
    #[error("k must be >= 2, got {0}")]
    TooFewClusters(usize),
    #[error("need at least {k} distinct scores, found {distinct}")]
    TooFewDistinct { k: usize, distinct: usize },
}

/// One window size's run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub tweets_per_sec: f64,
    pub elapsed_ms: u64,
    pub bots_detected: u64,
}

/// Runs the full detector once per window size, in the order given.
///
/// Timing covers attribute derivation and scoring, not parsing. With
/// `parallel` the runs overlap and their timings are not comparable.
pub fn sweep_n(
    records: &[TweetRecord],
    n_values: &[usize],
    cfg: &DetectionConfig,
    lexicons: &Lexicons,
    parallel: bool,
) -> Result<Vec<SweepRow>, AnalysisError> {
    if n_values.is_empty() {
        return Err(AnalysisError::NoWindowSizes);
    }
    if n_values.contains(&0) {
        return Err(AnalysisError::ZeroWindow);
    }
    let run = |&n: &usize| {
        let cfg = DetectionConfig {
            window_n: n,
            ..cfg.clone()
        };
        let started = Stopwatch::start();
        let (_, report) = process_stream(records, &cfg, lexicons);
        let elapsed = started.elapsed();
        let secs = elapsed.as_secs_f64();
        SweepRow {
            n,
            tweets_per_sec: if secs > 0.0 {
                records.len() as f64 / secs
            } else {
                0.0
            },
            elapsed_ms: elapsed.as_millis() as u64,
            bots_detected: report.flagged,
        }
    };
    Ok(if parallel {
        n_values.par_iter().map(run).collect()
    } else {
        n_values.iter().map(run).collect()
    })
}

/// Fixed-width bins over `[0, 1]` as `(lower_edge, count)`.
///
/// Scores outside `[0, 1]` are clamped into the end bins. The last bin is
/// closed on the right so a score of exactly 1 is counted.
pub fn score_histogram(scores: &[f64], bin_width: f64) -> Result<Vec<(f64, u64)>, AnalysisError> {
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(AnalysisError::BinWidth(bin_width));
    }
    let bins = (1.0 / bin_width - 1e-9).ceil().max(1.0) as usize;
    let mut counts = vec![0u64; bins];
    for &s in scores {
        // small epsilon so 0.3 / 0.1 lands in bin 3, not 2
        let idx = ((s.clamp(0.0, 1.0) / bin_width) + 1e-9).floor() as usize;
        counts[idx.min(bins - 1)] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as f64 * bin_width, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_two_bins() {
        let h = score_histogram(&[0.1, 0.1, 0.9], 0.5).unwrap();
        assert_eq!(h, vec![(0.0, 2), (0.5, 1)]);
    }

    #[test]
    fn histogram_empty_input_is_all_zero() {
        let h = score_histogram(&[], 0.25).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.iter().all(|&(_, c)| c == 0));
    }

    #[test]
    fn histogram_edges() {
        let h = score_histogram(&[0.0, 0.3, 1.0], 0.1).unwrap();
        assert_eq!(h.len(), 10);
        assert_eq!(h[0].1, 1);
        assert_eq!(h[3].1, 1);
        assert_eq!(h[9].1, 1);
        let h = score_histogram(&[0.5], 0.3).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h[1].1, 1);
    }

    #[test]
    fn histogram_rejects_bad_width() {
        assert!(score_histogram(&[0.1], 0.0).is_err());
        assert!(score_histogram(&[0.1], 1.5).is_err());
        assert!(score_histogram(&[0.1], f64::NAN).is_err());
    }

    #[test]
    fn sweep_rejects_bad_sizes() {
        let lex = Lexicons::bundled();
        let cfg = DetectionConfig::default();
        assert_eq!(
            sweep_n(&[], &[], &cfg, &lex, false),
            Err(AnalysisError::NoWindowSizes)
        );
        assert_eq!(
            sweep_n(&[], &[0], &cfg, &lex, false),
            Err(AnalysisError::ZeroWindow)
        );
    }
}
