//! Browser bindings for the detector demo page in `www/`.
//!
//! Each export takes and returns plain values or JSON strings. The logic lives
//! in ordinary functions so it can be tested without a browser.

use botwatch::analysis::{kmeans_1d, score_histogram};
use botwatch::scorer::Evidence;
use botwatch::synth::{evaluate, StreamPlan};
use botwatch::{process_stream, DetectionConfig, Lexicons};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

/// Ratcliff/Obershelp similarity of two texts, in `[0, 1]`.
#[wasm_bindgen]
pub fn similarity(a: &str, b: &str) -> f64 {
    botwatch::features::similarity(a, b)
}

/// Scores hand-entered components. See [`ScoreInput`] for the JSON shape.
#[wasm_bindgen]
pub fn score(input_json: &str) -> Result<String, JsError> {
    score_json(input_json).map_err(|e| JsError::new(&e))
}

/// Generates a labeled stream, runs detection and summarizes it.
#[wasm_bindgen]
pub fn simulate(
    organic: u32,
    bots_per_campaign: u32,
    seed: u32,
    window_n: u32,
    threshold: f64,
) -> Result<String, JsError> {
    let params = SimParams {
        organic: organic as usize,
        bots_per_campaign: bots_per_campaign as usize,
        seed: u64::from(seed),
        window_n: window_n as usize,
        threshold,
    };
    simulate_json(&params).map_err(|e| JsError::new(&e))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreInput {
    pub neighbors: usize,
    pub sim_count: usize,
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
    #[serde(default)]
    pub high_score_threshold: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Term {
    name: &'static str,
    value: f64,
    multiplier: f64,
    contribution: f64,
}

#[derive(Debug, Serialize)]
struct ScoreOutput {
    terms: Vec<Term>,
    raw_score: f64,
    max_score: f64,
    percentage: f64,
    is_bot: bool,
}

pub fn score_json(input_json: &str) -> Result<String, String> {
    let input: ScoreInput = serde_json::from_str(input_json).map_err(|e| e.to_string())?;
    if input.neighbors == 0 {
        return Err("neighbors must be at least 1".into());
    }
    let n = input.neighbors;
    let counts = [
        ("sim_count", input.sim_count),
        ("time_count", input.time_count),
        ("lang_count", input.lang_count),
        ("gender_count", input.gender_count),
        ("user_agent_count", input.user_agent_count),
        ("time_zone_count", input.time_zone_count),
        ("location_count", input.location_count),
        ("profile_url_count", input.profile_url_count),
        ("profile_description_count", input.profile_description_count),
    ];
    if let Some((name, _)) = counts.iter().find(|(_, c)| *c > n) {
        return Err(format!("{name} cannot exceed neighbors ({n})"));
    }
    if input.time_count > input.sim_count {
        return Err("time_count cannot exceed sim_count".into());
    }
    if !(0.0..=n as f64).contains(&input.sim_sum) {
        return Err(format!("sim_sum must be in [0, {n}]"));
    }
    let mut cfg = DetectionConfig::default();
    if let Some(t) = input.high_score_threshold {
        cfg.high_score_threshold = t;
    }
    cfg.validate().map_err(|e| e.to_string())?;

    let ev = Evidence {
        neighbors: n,
        sim_count: input.sim_count,
        time_count: input.time_count,
        sim_sum: input.sim_sum,
        lang_count: input.lang_count,
        gender_count: input.gender_count,
        user_agent_count: input.user_agent_count,
        time_zone_count: input.time_zone_count,
        location_count: input.location_count,
        profile_url_count: input.profile_url_count,
        profile_description_count: input.profile_description_count,
        entropy_flag: input.entropy_flag,
        sentiment_flag: input.sentiment_flag,
    };
    let m = &cfg.multipliers;
    let flag = |set: bool| if set { n as f64 } else { 0.0 };
    let terms = [
        ("similarity", input.sim_count as f64, m.similarity),
        (
            "time difference",
            input.time_count as f64,
            m.time_difference,
        ),
        ("similarity sum", input.sim_sum, m.similarity_sum),
        ("language", input.lang_count as f64, m.language),
        ("gender", input.gender_count as f64, m.gender),
        ("user agent", input.user_agent_count as f64, m.user_agent),
        ("time zone", input.time_zone_count as f64, m.time_zone),
        ("location", input.location_count as f64, m.location),
        ("profile URL", input.profile_url_count as f64, m.profile_url),
        (
            "profile description",
            input.profile_description_count as f64,
            m.profile_description,
        ),
        ("entropy", flag(input.entropy_flag), m.entropy),
        ("sentiment", flag(input.sentiment_flag), m.sentiment),
    ]
    .into_iter()
    .map(|(name, value, multiplier)| Term {
        name,
        value,
        multiplier,
        contribution: value * multiplier,
    })
    .collect();
    let b = ev.finish(&cfg);
    let out = ScoreOutput {
        terms,
        raw_score: b.raw_score,
        max_score: b.max_score,
        percentage: b.percentage,
        is_bot: b.is_bot,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct SimParams {
    pub organic: usize,
    pub bots_per_campaign: usize,
    pub seed: u64,
    pub window_n: usize,
    pub threshold: f64,
}

#[derive(Debug, Serialize)]
struct SimOutput {
    tweets: usize,
    bots: usize,
    flagged: u64,
    /// Percentages in stream order, for the timeline plot.
    scores: Vec<f64>,
    labels: Vec<bool>,
    histogram: Vec<(f64, u64)>,
    centroids: Vec<f64>,
    boundaries: Vec<f64>,
    precision: f64,
    recall: f64,
    f1: f64,
}

const MAX_ORGANIC: usize = 20_000;

pub fn simulate_json(p: &SimParams) -> Result<String, String> {
    if p.organic > MAX_ORGANIC {
        return Err(format!("at most {MAX_ORGANIC} organic tweets"));
    }
    if p.bots_per_campaign == 0 {
        return Err("bots per campaign must be at least 1".into());
    }
    let mut plan = StreamPlan::benchmark();
    plan.organic_count = p.organic;
    for c in &mut plan.campaigns {
        c.bot_count = p.bots_per_campaign;
    }
    let cfg = DetectionConfig {
        window_n: p.window_n,
        high_score_threshold: p.threshold,
        ..DetectionConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;

    let stream = plan.generate(p.seed).map_err(|e| e.to_string())?;
    let (scored, report) = process_stream(&stream.records, &cfg, &Lexicons::bundled());
    let scores: Vec<f64> = scored.iter().map(|s| s.breakdown.percentage).collect();
    let predicted: Vec<bool> = scored.iter().map(|s| s.breakdown.is_bot).collect();
    let metrics = evaluate(&stream.labels, &predicted).map_err(|e| e.to_string())?;
    let histogram = score_histogram(&scores, 0.01).map_err(|e| e.to_string())?;
    let (centroids, boundaries) = match kmeans_1d(&scores, 2, p.seed) {
        Ok(c) => {
            let b = c.boundaries();
            (c.centroids, b)
        }
        Err(_) => (Vec::new(), Vec::new()),
    };
    let out = SimOutput {
        tweets: stream.records.len(),
        bots: stream.labels.iter().filter(|&&b| b).count(),
        flagged: report.flagged,
        scores,
        labels: stream.labels,
        histogram,
        centroids,
        boundaries,
        precision: metrics.precision,
        recall: metrics.recall,
        f1: metrics.f1,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}
