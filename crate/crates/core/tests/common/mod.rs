//! From-scratch reference implementations, kept deliberately naive.
#![allow(dead_code)]

use botwatch::features::Gender;
use botwatch::{DetectionConfig, GenderLexicon, SentimentLexicon, TweetRecord};
use unicode_normalization::UnicodeNormalization;

/// Longest common block by full DP table. Ties: smallest `i`, then smallest `j`.
fn longest_block(a: &[char], b: &[char]) -> (usize, usize, usize) {
    let mut table = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    let mut best = (0, 0, 0);
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            if a[i - 1] == b[j - 1] {
                table[i][j] = table[i - 1][j - 1] + 1;
            }
        }
    }
    for i in 0..a.len() {
        for j in 0..b.len() {
            let k = table[i + 1][j + 1];
            if k == 0 {
                continue;
            }
            let (start_i, start_j) = (i + 1 - k, j + 1 - k);
            let better = k > best.2 || (k == best.2 && (start_i, start_j) < (best.0, best.1));
            if better {
                best = (start_i, start_j, k);
            }
        }
    }
    best
}

fn matches(a: &[char], b: &[char]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (i, j, k) = longest_block(a, b);
    if k == 0 {
        return 0;
    }
    k + matches(&a[..i], &b[..j]) + matches(&a[i + k..], &b[j + k..])
}

/// Gestalt ratio with the lexicographically smaller string as `a`.
pub fn similarity(x: &str, y: &str) -> f64 {
    let mut a: Vec<char> = x.chars().collect();
    let mut b: Vec<char> = y.chars().collect();
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    if a.len() + b.len() == 0 {
        return 1.0;
    }
    2.0 * matches(&a, &b) as f64 / (a.len() + b.len()) as f64
}

pub fn entropy(text: &str) -> f64 {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return 0.0;
    }
    let mut seen: Vec<(char, usize)> = Vec::new();
    for c in &chars {
        match seen.iter_mut().find(|(x, _)| x == c) {
            Some(e) => e.1 += 1,
            None => seen.push((*c, 1)),
        }
    }
    let n = chars.len() as f64;
    let h: f64 = seen
        .iter()
        .map(|&(_, c)| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    h.max(0.0)
}

pub fn sentiment(text: &str, lex: &SentimentLexicon) -> f64 {
    let mut total = 0.0;
    let mut hits = 0.0;
    for word in text.split_whitespace() {
        let start = word.find(char::is_alphanumeric);
        let Some(start) = start else { continue };
        let end = word.rfind(char::is_alphanumeric).unwrap();
        let end = end + word[end..].chars().next().unwrap().len_utf8();
        if let Some(v) = lex.valence(&word[start..end].to_lowercase()) {
            total += f64::from(v);
            hits += 1.0;
        }
    }
    if hits == 0.0 {
        0.0
    } else {
        total / (5.0 * hits)
    }
}

fn gender(name: Option<&str>, lex: &GenderLexicon) -> Option<Gender> {
    lex.lookup(name?.split_whitespace().next()?)
}

fn eq(a: &Option<String>, b: &Option<String>) -> bool {
    a.is_some() && a == b
}

/// One reference score, recomputed from the raw records.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub counts: [usize; 10],
    pub sim_sum: f64,
    pub entropy_flag: bool,
    pub sentiment_flag: bool,
    pub raw: f64,
    pub max: f64,
    pub percentage: f64,
    pub is_bot: bool,
}

/// O(n·N) rescoring: each record against the `window_n` records before it.
pub fn score_all(
    records: &[TweetRecord],
    cfg: &DetectionConfig,
    sent: &SentimentLexicon,
    gend: &GenderLexicon,
) -> Vec<Reference> {
    let texts: Vec<String> = records.iter().map(|r| r.text.nfc().collect()).collect();
    let genders: Vec<Option<Gender>> = records
        .iter()
        .map(|r| gender(r.user_name.as_deref(), gend))
        .collect();
    let m = &cfg.multipliers;
    (0..records.len())
        .map(|i| {
            let t = &records[i];
            let lo = i.saturating_sub(cfg.window_n);
            let n = i - lo;
            let mut c = [0usize; 10];
            let mut sim_sum = 0.0;
            for j in lo..i {
                let w = &records[j];
                let s = similarity(&texts[i], &texts[j]);
                sim_sum += s;
                if s >= cfg.sim_threshold {
                    c[0] += 1;
                    if (t.timestamp_ms - w.timestamp_ms).abs() <= cfg.time_threshold_ms {
                        c[1] += 1;
                    }
                }
                c[2] += eq(&t.lang, &w.lang) as usize;
                c[3] += (genders[i].is_some() && genders[i] == genders[j]) as usize;
                c[4] += eq(&t.source, &w.source) as usize;
                c[5] += eq(&t.time_zone, &w.time_zone) as usize;
                c[6] += eq(&t.location, &w.location) as usize;
                c[7] += eq(&t.profile_url, &w.profile_url) as usize;
                c[8] += eq(&t.profile_description, &w.profile_description) as usize;
            }
            c[9] = n;
            let entropy_flag = entropy(&texts[i]) < cfg.entropy_threshold_bits;
            let s = sentiment(&texts[i], sent);
            let sentiment_flag = match cfg.sentiment_mode {
                botwatch::scorer::SentimentMode::Absolute => s.abs() > cfg.sentiment_threshold,
                botwatch::scorer::SentimentMode::Signed => s > cfg.sentiment_threshold,
            };
            if n == 0 {
                return Reference {
                    counts: c,
                    sim_sum,
                    entropy_flag: false,
                    sentiment_flag: false,
                    raw: 0.0,
                    max: 0.0,
                    percentage: 0.0,
                    is_bot: false,
                };
            }
            let nf = n as f64;
            let raw = m.similarity * c[0] as f64
                + m.time_difference * c[1] as f64
                + m.similarity_sum * sim_sum
                + m.language * c[2] as f64
                + m.gender * c[3] as f64
                + m.user_agent * c[4] as f64
                + m.time_zone * c[5] as f64
                + m.location * c[6] as f64
                + m.profile_url * c[7] as f64
                + m.profile_description * c[8] as f64
                + if entropy_flag { m.entropy * nf } else { 0.0 }
                + if sentiment_flag {
                    m.sentiment * nf
                } else {
                    0.0
                };
            let max = [
                m.similarity,
                m.time_difference,
                m.similarity_sum,
                m.language,
                m.gender,
                m.user_agent,
                m.time_zone,
                m.location,
                m.profile_url,
                m.profile_description,
                m.entropy,
                m.sentiment,
            ]
            .iter()
            .map(|w| w * nf)
            .sum::<f64>();
            let percentage = raw / max;
            Reference {
                counts: c,
                sim_sum,
                entropy_flag,
                sentiment_flag,
                raw,
                max,
                percentage,
                is_bot: percentage >= cfg.high_score_threshold,
            }
        })
        .collect()
}
