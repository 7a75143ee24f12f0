use std::collections::HashMap;

use serde::Serialize;

use super::SynthError;

/// Confusion matrix and derived rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub true_positives: u64,
    pub false_positives: u64,
    pub true_negatives: u64,
    pub false_negatives: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }
}

// 0/0 is 1 only when nothing was predicted and nothing existed on either side
fn rate(hits: u64, denominator: u64, other_positives: u64) -> f64 {
    if denominator == 0 {
        if other_positives == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        hits as f64 / denominator as f64
    }
}

/// Scores predictions against ground truth, element by element.
pub fn evaluate(truth: &[bool], predicted: &[bool]) -> Result<Metrics, SynthError> {
    if truth.len() != predicted.len() {
        return Err(SynthError::LengthMismatch {
            labels: truth.len(),
            predictions: predicted.len(),
        });
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for (&t, &p) in truth.iter().zip(predicted) {
        match (t, p) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (false, false) => tn += 1,
            (true, false) => fn_ += 1,
        }
    }
    let precision = rate(tp, tp + fp, tp + fn_);
    let recall = rate(tp, tp + fn_, tp + fp);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(Metrics {
        true_positives: tp,
        false_positives: fp,
        true_negatives: tn,
        false_negatives: fn_,
        precision,
        recall,
        f1,
    })
}

/// Reads a `tweet_id,is_bot` file. Accepts `true/false` or `1/0`; a header row is skipped.
pub fn parse_labels(text: &str) -> Result<HashMap<String, bool>, SynthError> {
    let mut out = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line.starts_with("tweet_id")) {
            continue;
        }
        let (id, flag) = line
            .split_once(',')
            .ok_or(SynthError::LabelSyntax(idx + 1))?;
        let flag = match flag.trim() {
            "true" | "1" => true,
            "false" | "0" => false,
            _ => return Err(SynthError::LabelSyntax(idx + 1)),
        };
        out.insert(id.trim().to_string(), flag);
    }
    Ok(out)
}
