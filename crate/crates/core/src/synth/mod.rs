//! Seeded synthetic streams: organic chatter mixed with coordinated campaigns.
//!
//! All randomness comes from one ChaCha stream seeded by the caller, so a
//! given `(organic_count, campaigns, duration_ms, seed)` always produces the
//! same records in the same order.

mod eval;
mod pools;

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use eval::{evaluate, parse_labels, Metrics};

use crate::features::{Gender, GenderLexicon};
use crate::ingest::TweetRecord;
use crate::kv::{KvDocument, KvError};
use pools::*;

/// Epoch offset added to generated timestamps (2016-02-01T00:00:00Z).
pub const BASE_EPOCH_MS: i64 = 1_454_284_800_000;
const FIRST_TWEET_ID: u64 = 694_000_000_000_000_000;
const ORGANIC_TWEETS_PER_USER: usize = 3;
const LOCATION_ABSENT_P: f64 = 0.7;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error(transparent)]
    Format(#[from] KvError),
    #[error("{0}")]
    Invalid(String),
    #[error("labels length {labels} does not match {predictions} predictions")]
    LengthMismatch { labels: usize, predictions: usize },
    #[error("labels line {0}: expected `tweet_id,is_bot`")]
    LabelSyntax(usize),
}

/// How each campaign message differs from the template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Appends an incrementing number.
    Counter,
    /// Appends a short link with a random 5-character tail.
    RandomUrl,
}

impl std::str::FromStr for Mutation {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "none" => Ok(Self::None),
            "counter" => Ok(Self::Counter),
            "random_url" => Ok(Self::RandomUrl),
            _ => Err(()),
        }
    }
}

/// Which profile fields every bot in a campaign shares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharedProfile {
    pub user_agent: bool,
    pub time_zone: bool,
    pub profile_url: bool,
    pub profile_description: bool,
    pub lang: bool,
    pub location: bool,
    pub gender: bool,
}

impl Default for SharedProfile {
    fn default() -> Self {
        Self {
            user_agent: true,
            time_zone: false,
            profile_url: true,
            profile_description: true,
            lang: false,
            location: false,
            gender: false,
        }
    }
}

impl SharedProfile {
    pub fn none() -> Self {
        Self {
            user_agent: false,
            time_zone: false,
            profile_url: false,
            profile_description: false,
            lang: false,
            location: false,
            gender: false,
        }
    }

    /// Parses a comma-separated field list such as `user_agent,profile_url`.
    pub fn parse_list(s: &str) -> Result<Self, String> {
        let mut p = Self::none();
        for field in s.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            match field {
                "user_agent" => p.user_agent = true,
                "time_zone" => p.time_zone = true,
                "profile_url" => p.profile_url = true,
                "profile_description" => p.profile_description = true,
                "lang" => p.lang = true,
                "location" => p.location = true,
                "gender" => p.gender = true,
                "none" => {}
                other => return Err(format!("unknown shared profile field `{other}`")),
            }
        }
        Ok(p)
    }
}

/// One coordinated campaign: `bot_count` accounts posting the same template in bursts.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub bot_count: usize,
    /// Message text. A `{}` marks where the mutation goes; otherwise it is appended.
    pub template: String,
    pub mutation: Mutation,
    pub burst_window_ms: i64,
    pub shared_profile: SharedProfile,
    pub start_offset_ms: i64,
    pub repeat_count: usize,
    pub repeat_gap_ms: i64,
}

impl CampaignSpec {
    pub fn new(bot_count: usize, template: impl Into<String>) -> Self {
        Self {
            bot_count,
            template: template.into(),
            mutation: Mutation::None,
            burst_window_ms: 4000,
            shared_profile: SharedProfile::default(),
            start_offset_ms: 0,
            repeat_count: 1,
            repeat_gap_ms: 60_000,
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.bot_count < 1 {
            return Err(SynthError::Invalid("bot_count must be >= 1".into()));
        }
        if self.burst_window_ms <= 0 {
            return Err(SynthError::Invalid("burst_window_ms must be > 0".into()));
        }
        if self.repeat_count < 1 {
            return Err(SynthError::Invalid("repeat_count must be >= 1".into()));
        }
        if self.start_offset_ms < 0 || self.repeat_gap_ms < 0 {
            return Err(SynthError::Invalid("campaign offsets must be >= 0".into()));
        }
        Ok(())
    }
}

/// Everything `generate` needs apart from the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamPlan {
    pub organic_count: usize,
    pub duration_ms: i64,
    pub campaigns: Vec<CampaignSpec>,
}

impl StreamPlan {
    /// The reference benchmark: 5,000 organic tweets over 500 s and three
    /// low-diversity campaigns of 25 bots posting in four bursts each.
    /// Used with seed [`BENCHMARK_SEED`].
    pub fn benchmark() -> Self {
        let campaign = |template: &str, mutation, start| CampaignSpec {
            mutation,
            start_offset_ms: start,
            repeat_count: 4,
            repeat_gap_ms: 110_000,
            ..CampaignSpec::new(25, template)
        };
        Self {
            organic_count: 5000,
            duration_ms: 500_000,
            campaigns: vec![
                campaign(
                    "FREE FREE FREE followers follow follow follow now now",
                    Mutation::Counter,
                    20_000,
                ),
                campaign(
                    "wow wow win win win now now wow",
                    Mutation::RandomUrl,
                    55_000,
                ),
                CampaignSpec {
                    shared_profile: SharedProfile {
                        time_zone: true,
                        ..SharedProfile::default()
                    },
                    ..campaign(
                        "awesome awesome awesome deal deal deal now now now",
                        Mutation::Counter,
                        90_000,
                    )
                },
            ],
        }
    }

    /// Reads a plan from key/value text:
    ///
    /// ```text
    /// organic_count = 5000
    /// duration_ms = 500000
    /// campaign.promo.bot_count = 25
    /// campaign.promo.template = "FREE followers {} now"
    /// campaign.promo.mutation = counter
    /// campaign.promo.shared = user_agent,profile_url
    /// ```
    ///
    /// Campaigns are ordered by name. Omitted campaign fields take the
    /// [`CampaignSpec::new`] defaults.
    pub fn from_kv(doc: &KvDocument) -> Result<Self, SynthError> {
        let mut plan = Self {
            organic_count: doc.parse_value("organic_count")?.unwrap_or(0),
            duration_ms: doc.parse_value("duration_ms")?.unwrap_or(600_000),
            campaigns: Vec::new(),
        };
        let mut campaigns: BTreeMap<&str, CampaignSpec> = BTreeMap::new();
        for key in doc.keys() {
            if key == "organic_count" || key == "duration_ms" {
                continue;
            }
            let (name, field) = key
                .strip_prefix("campaign.")
                .and_then(|rest| rest.rsplit_once('.'))
                .ok_or_else(|| KvError::UnknownKey(key.to_string()))?;
            let spec = campaigns
                .entry(name)
                .or_insert_with(|| CampaignSpec::new(1, ""));
            let bad = || KvError::BadValue {
                key: key.to_string(),
                value: doc.get(key).unwrap_or_default().to_string(),
            };
            let value = doc.get(key).unwrap_or_default();
            match field {
                "bot_count" => spec.bot_count = value.parse().map_err(|_| bad())?,
                "template" => spec.template = value.to_string(),
                "mutation" => spec.mutation = value.parse().map_err(|_| bad())?,
                "burst_window_ms" => spec.burst_window_ms = value.parse().map_err(|_| bad())?,
                "shared" => {
                    spec.shared_profile =
                        SharedProfile::parse_list(value).map_err(SynthError::Invalid)?
                }
                "start_offset_ms" => spec.start_offset_ms = value.parse().map_err(|_| bad())?,
                "repeat_count" => spec.repeat_count = value.parse().map_err(|_| bad())?,
                "repeat_gap_ms" => spec.repeat_gap_ms = value.parse().map_err(|_| bad())?,
                _ => return Err(KvError::UnknownKey(key.to_string()).into()),
            }
        }
        plan.campaigns = campaigns.into_values().collect();
        Ok(plan)
    }

    pub fn generate(&self, seed: u64) -> Result<LabeledStream, SynthError> {
        generate(self.organic_count, &self.campaigns, self.duration_ms, seed)
    }
}

pub const BENCHMARK_SEED: u64 = 7;

/// Records in timestamp order with per-record ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledStream {
    pub records: Vec<TweetRecord>,
    pub labels: Vec<bool>,
}

impl LabeledStream {
    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_json_line());
            out.push('\n');
        }
        out
    }

    /// `tweet_id,is_bot` with a header row.
    pub fn labels_csv(&self) -> String {
        let mut out = String::from("tweet_id,is_bot\n");
        for (r, l) in self.records.iter().zip(&self.labels) {
            out.push_str(&r.tweet_id);
            out.push(',');
            out.push_str(if *l { "true" } else { "false" });
            out.push('\n');
        }
        out
    }
}

struct Profile {
    user_id: String,
    name: Option<String>,
    lang: Option<String>,
    source: Option<String>,
    time_zone: Option<String>,
    location: Option<String>,
    url: Option<String>,
    description: Option<String>,
}

struct Draft {
    offset_ms: i64,
    text: String,
    profile: usize,
    is_bot: bool,
}

fn pick<'a, R: Rng>(rng: &mut R, items: &[&'a str]) -> &'a str {
    items.choose(rng).expect("pools are non-empty")
}

fn pick_weighted<'a, R: Rng>(rng: &mut R, items: &[(&'a str, f64)]) -> &'a str {
    let dist = WeightedIndex::new(items.iter().map(|(_, w)| *w)).expect("weights are positive");
    items[dist.sample(rng)].0
}

fn random_tail<R: Rng>(rng: &mut R, len: usize) -> String {
    const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    (0..len)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())] as char)
        .collect()
}

fn handle<R: Rng>(rng: &mut R) -> String {
    format!(
        "{}_{}{}",
        pick(rng, HANDLE_WORDS),
        pick(rng, HANDLE_WORDS),
        rng.gen_range(0..1000)
    )
}

fn display_name<R: Rng>(rng: &mut R, names: &NamePools, gender: Option<Gender>) -> String {
    let pool = match gender {
        Some(Gender::Male) => &names.male,
        Some(Gender::Female) => &names.female,
        None => return handle(rng),
    };
    let mut first = pool.choose(rng).expect("lexicon has names").clone();
    if let Some(c) = first.get_mut(0..1) {
        c.make_ascii_uppercase();
    }
    format!("{first} {}", pick(rng, SURNAMES))
}

struct NamePools {
    male: Vec<String>,
    female: Vec<String>,
}

impl NamePools {
    fn from_lexicon(lexicon: &GenderLexicon) -> Self {
        let owned = |g| {
            lexicon
                .names_of(g)
                .into_iter()
                .map(str::to_string)
                .collect()
        };
        Self {
            male: owned(Gender::Male),
            female: owned(Gender::Female),
        }
    }
}

fn organic_profile<R: Rng>(rng: &mut R, names: &NamePools, user_id: String) -> Profile {
    let gender = match rng.gen_range(0..10) {
        0..=2 => Some(Gender::Male),
        3..=5 => Some(Gender::Female),
        _ => None,
    };
    let name = display_name(rng, names, gender);
    let description = rng.gen_bool(0.7).then(|| {
        let mut parts: Vec<&str> = BIO_PARTS.choose_multiple(rng, 3).copied().collect();
        parts.shuffle(rng);
        parts.join(" | ")
    });
    let url = rng
        .gen_bool(0.4)
        .then(|| format!("http://{}.example.com", handle(rng).replace('_', "-")));
    Profile {
        user_id,
        name: Some(name),
        lang: Some(pick_weighted(rng, LANGS).to_string()),
        source: Some(pick_weighted(rng, SOURCES).to_string()),
        time_zone: rng
            .gen_bool(0.65)
            .then(|| pick(rng, TIME_ZONES).to_string()),
        location: (!rng.gen_bool(LOCATION_ABSENT_P)).then(|| pick(rng, LOCATIONS).to_string()),
        url,
        description,
    }
}

fn organic_text<R: Rng>(rng: &mut R) -> String {
    let frame = pick(rng, FRAMES);
    let mut out = String::with_capacity(frame.len() + 40);
    let mut rest = frame;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let end = rest[start..].find('}').expect("frames have closed slots") + start;
        out.push_str(match &rest[start + 1..end] {
            "place" => pick(rng, PLACES),
            "thing" => pick(rng, THINGS),
            "time" => pick(rng, TIMES),
            "feel" => pick(rng, FEELINGS),
            "show" => pick(rng, SHOWS),
            "relative" => pick(rng, RELATIVES),
            "topic" => pick(rng, TOPICS),
            "food" => pick(rng, FOODS),
            "team" => pick(rng, TEAMS),
            other => unreachable!("unknown slot {other}"),
        });
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    match rng.gen_range(0..10) {
        0 | 1 => {
            out.push(' ');
            out.push_str(pick(rng, HASHTAGS));
        }
        2 => {
            out.push_str(" https://t.co/");
            out.push_str(&random_tail(rng, 10));
        }
        _ => {}
    }
    out
}

fn campaign_text<R: Rng>(rng: &mut R, spec: &CampaignSpec, counter: usize) -> String {
    let insert = match spec.mutation {
        Mutation::None => None,
        Mutation::Counter => Some(counter.to_string()),
        Mutation::RandomUrl => Some(format!("t.co/{}", random_tail(rng, 5))),
    };
    match (insert, spec.template.contains("{}")) {
        (None, _) => spec.template.replace("{}", "").trim().to_string(),
        (Some(v), true) => spec.template.replacen("{}", &v, 1),
        (Some(v), false) => format!("{} {v}", spec.template),
    }
}

/// Generates a labeled stream.
///
/// Organic tweets get uniform timestamps over `[0, duration_ms]` from a pool
/// of users posting about three times each. Every campaign burst posts one
/// tweet per bot at uniform offsets inside its burst window, clamped to
/// `duration_ms`. The result is stably sorted by timestamp and tweet ids are
/// assigned in that order.
pub fn generate(
    organic_count: usize,
    campaigns: &[CampaignSpec],
    duration_ms: i64,
    seed: u64,
) -> Result<LabeledStream, SynthError> {
    if duration_ms <= 0 {
        return Err(SynthError::Invalid("duration_ms must be > 0".into()));
    }
    for c in campaigns {
        c.validate()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = NamePools::from_lexicon(&GenderLexicon::bundled());

    let mut profiles = Vec::new();
    let organic_users = organic_count.div_ceil(ORGANIC_TWEETS_PER_USER);
    for u in 0..organic_users {
        profiles.push(organic_profile(
            &mut rng,
            &names,
            format!("{}", 100_000 + u),
        ));
    }

    let mut drafts = Vec::with_capacity(organic_count);
    for _ in 0..organic_count {
        drafts.push(Draft {
            offset_ms: rng.gen_range(0..=duration_ms),
            text: organic_text(&mut rng),
            profile: rng.gen_range(0..organic_users),
            is_bot: false,
        });
    }

    for (ci, spec) in campaigns.iter().enumerate() {
        let shared = &spec.shared_profile;
        let client = format!("{} {}", pick(&mut rng, BOT_CLIENTS), ci + 1);
        let url = format!("http://bit.ly/{}", random_tail(&mut rng, 7));
        let bio = pick(&mut rng, SPAM_BIOS).to_string();
        let tz = pick(&mut rng, TIME_ZONES).to_string();
        let location = pick(&mut rng, LOCATIONS).to_string();
        let gender = if rng.gen_bool(0.5) {
            Gender::Male
        } else {
            Gender::Female
        };

        let first_bot = profiles.len();
        for b in 0..spec.bot_count {
            let mut p = organic_profile(&mut rng, &names, format!("{}{:03}", 9_000 + ci, b));
            p.name = Some(if shared.gender {
                display_name(&mut rng, &names, Some(gender))
            } else {
                handle(&mut rng)
            });
            if shared.user_agent {
                p.source = Some(client.clone());
            }
            if shared.profile_url {
                p.url = Some(url.clone());
            }
            if shared.profile_description {
                p.description = Some(bio.clone());
            }
            if shared.time_zone {
                p.time_zone = Some(tz.clone());
            }
            if shared.location {
                p.location = Some(location.clone());
            }
            if shared.lang {
                p.lang = Some("en".into());
            }
            profiles.push(p);
        }

        let mut counter = 0;
        for r in 0..spec.repeat_count {
            let burst_start = spec.start_offset_ms + r as i64 * spec.repeat_gap_ms;
            for b in 0..spec.bot_count {
                counter += 1;
                let jitter = rng.gen_range(0..spec.burst_window_ms);
                drafts.push(Draft {
                    offset_ms: (burst_start + jitter).min(duration_ms),
                    text: campaign_text(&mut rng, spec, counter),
                    profile: first_bot + b,
                    is_bot: true,
                });
            }
        }
    }

    drafts.sort_by_key(|d| d.offset_ms);
    let mut records = Vec::with_capacity(drafts.len());
    let mut labels = Vec::with_capacity(drafts.len());
    for (i, d) in drafts.into_iter().enumerate() {
        let p = &profiles[d.profile];
        records.push(TweetRecord {
            tweet_id: (FIRST_TWEET_ID + i as u64).to_string(),
            user_id: p.user_id.clone(),
            timestamp_ms: BASE_EPOCH_MS + d.offset_ms,
            text: d.text,
            lang: p.lang.clone(),
            source: p.source.clone(),
            user_name: p.name.clone(),
            time_zone: p.time_zone.clone(),
            location: p.location.clone(),
            profile_url: p.url.clone(),
            profile_description: p.description.clone(),
        });
        labels.push(d.is_bot);
    }
    Ok(LabeledStream { records, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::similarity;

    #[test]
    fn same_seed_same_bytes() {
        let plan = StreamPlan::benchmark();
        let a = plan.generate(42).unwrap();
        let b = plan.generate(42).unwrap();
        assert_eq!(a.to_ndjson(), b.to_ndjson());
        assert_eq!(a.labels, b.labels);
        assert_ne!(a.to_ndjson(), plan.generate(43).unwrap().to_ndjson());
    }

    #[test]
    fn single_burst_of_21() {
        let spec = CampaignSpec::new(21, "Please check out my awesome link");
        let s = generate(0, &[spec], 60_000, 1).unwrap();
        assert_eq!(s.records.len(), 21);
        assert!(s.labels.iter().all(|&l| l));
        let ts: Vec<i64> = s.records.iter().map(|r| r.timestamp_ms).collect();
        assert!(ts.windows(2).all(|w| w[0] <= w[1]));
        assert!(ts[20] - ts[0] <= 4000);
    }

    #[test]
    fn counter_mutation_stays_similar() {
        let spec = CampaignSpec {
            mutation: Mutation::Counter,
            repeat_count: 2,
            ..CampaignSpec::new(12, "Check out the new promo code today")
        };
        let s = generate(0, &[spec], 600_000, 3).unwrap();
        for a in &s.records {
            for b in &s.records {
                assert!(
                    similarity(&a.text, &b.text) >= 0.9,
                    "{} / {}",
                    a.text,
                    b.text
                );
            }
        }
    }

    #[test]
    fn template_slot_and_url_mutation() {
        let spec = CampaignSpec {
            mutation: Mutation::RandomUrl,
            ..CampaignSpec::new(3, "go {} now")
        };
        let s = generate(0, &[spec], 10_000, 5).unwrap();
        for r in &s.records {
            assert!(
                r.text.starts_with("go t.co/") && r.text.ends_with(" now"),
                "{}",
                r.text
            );
            assert_eq!(r.text.len(), "go t.co/abcde now".len());
        }
    }

    #[test]
    fn timestamps_stay_in_range() {
        let spec = CampaignSpec {
            start_offset_ms: 9_000,
            ..CampaignSpec::new(10, "late burst")
        };
        let s = generate(50, &[spec], 10_000, 9).unwrap();
        assert!(s
            .records
            .iter()
            .all(|r| (BASE_EPOCH_MS..=BASE_EPOCH_MS + 10_000).contains(&r.timestamp_ms)));
    }

    #[test]
    fn shared_profile_fields() {
        let spec = CampaignSpec::new(5, "x");
        let s = generate(0, &[spec], 10_000, 11).unwrap();
        let first = &s.records[0];
        for r in &s.records {
            assert_eq!(r.source, first.source);
            assert_eq!(r.profile_url, first.profile_url);
            assert_eq!(r.profile_description, first.profile_description);
        }
        let users: std::collections::HashSet<_> = s.records.iter().map(|r| &r.user_id).collect();
        assert_eq!(users.len(), 5);
    }

    #[test]
    fn plan_from_kv() {
        let doc = KvDocument::parse(
            "organic_count = 10\nduration_ms = 1000\n\
             campaign.b.bot_count = 4\ncampaign.b.mutation = counter\n\
             campaign.a.bot_count = 2\ncampaign.a.template = \"hi {}\"\ncampaign.a.shared = lang,gender\n",
        )
        .unwrap();
        let plan = StreamPlan::from_kv(&doc).unwrap();
        assert_eq!(plan.organic_count, 10);
        assert_eq!(plan.campaigns.len(), 2);
        assert_eq!(plan.campaigns[0].bot_count, 2);
        assert!(plan.campaigns[0].shared_profile.gender);
        assert!(!plan.campaigns[0].shared_profile.user_agent);
        assert_eq!(plan.campaigns[1].mutation, Mutation::Counter);

        let bad = KvDocument::parse("campaign.a.mutation = shuffle").unwrap();
        assert!(StreamPlan::from_kv(&bad).is_err());
        let bad = KvDocument::parse("campaign.a.colour = red").unwrap();
        assert!(StreamPlan::from_kv(&bad).is_err());
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(generate(1, &[], 0, 1).is_err());
        let spec = CampaignSpec {
            repeat_count: 0,
            ..CampaignSpec::new(1, "x")
        };
        assert!(generate(1, &[spec], 10, 1).is_err());
    }
}
