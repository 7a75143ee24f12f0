//! NDJSON and CSV rendering of scored tweets.
//!
//! Both formats carry the same columns. Reals are printed with six decimals so
//! output is byte-stable across runs. Timings are not part of these records.

use std::fmt::Write as _;
use std::io::{self, Write};

use serde::Serialize;

use crate::scorer::{DetectionReport, ScoredTweet};

pub const COLUMNS: [&str; 19] = [
    "tweet_id",
    "user_id",
    "neighbors",
    "sim_count",
    "time_count",
    "sim_sum",
    "lang_count",
    "gender_count",
    "user_agent_count",
    "time_zone_count",
    "location_count",
    "profile_url_count",
    "profile_description_count",
    "entropy_flag",
    "sentiment_flag",
    "raw_score",
    "max_score",
    "percentage",
    "is_bot",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Ndjson,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ndjson" => Ok(Self::Ndjson),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format `{other}` (expected ndjson or csv)")),
        }
    }
}

/// Totals written after the last record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub tweets: u64,
    pub flagged: u64,
    pub unique_accounts: u64,
    pub malformed: u64,
    pub out_of_order: u64,
}

impl Summary {
    pub fn new(report: &DetectionReport, malformed: u64) -> Self {
        Self {
            tweets: report.tweets,
            flagged: report.flagged,
            unique_accounts: report.unique_accounts,
            malformed,
            out_of_order: report.out_of_order,
        }
    }
}

fn values(t: &ScoredTweet) -> [String; 17] {
    let b = &t.breakdown;
    let e = &b.evidence;
    [
        e.neighbors.to_string(),
        e.sim_count.to_string(),
        e.time_count.to_string(),
        format!("{:.6}", e.sim_sum),
        e.lang_count.to_string(),
        e.gender_count.to_string(),
        e.user_agent_count.to_string(),
        e.time_zone_count.to_string(),
        e.location_count.to_string(),
        e.profile_url_count.to_string(),
        e.profile_description_count.to_string(),
        e.entropy_flag.to_string(),
        e.sentiment_flag.to_string(),
        format!("{:.6}", b.raw_score),
        format!("{:.6}", b.max_score),
        format!("{:.6}", b.percentage),
        b.is_bot.to_string(),
    ]
}

pub fn ndjson_line(t: &ScoredTweet) -> String {
    let mut line = String::with_capacity(320);
    line.push('{');
    let id = |s: &str| serde_json::to_string(s).expect("string serialization is infallible");
    let _ = write!(
        line,
        "\"tweet_id\":{},\"user_id\":{}",
        id(&t.tweet_id),
        id(&t.user_id)
    );
    for (name, value) in COLUMNS[2..].iter().zip(values(t)) {
        let _ = write!(line, ",\"{name}\":{value}");
    }
    line.push('}');
    line
}

pub fn csv_header() -> String {
    COLUMNS.join(",")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(t: &ScoredTweet) -> String {
    let mut fields = vec![csv_field(&t.tweet_id), csv_field(&t.user_id)];
    fields.extend(values(t));
    fields.join(",")
}

/// Streams records in one format, tracking whether the header is written.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    header_written: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Self {
            out,
            format,
            header_written: false,
        }
    }

    pub fn write(&mut self, t: &ScoredTweet) -> io::Result<()> {
        match self.format {
            Format::Ndjson => writeln!(self.out, "{}", ndjson_line(t)),
            Format::Csv => {
                if !self.header_written {
                    writeln!(self.out, "{}", csv_header())?;
                    self.header_written = true;
                }
                writeln!(self.out, "{}", csv_line(t))
            }
        }
    }

    /// Writes the summary record and flushes. NDJSON gets a `{"summary":…}`
    /// object; CSV gets a trailing `# summary` comment line.
    pub fn finish(mut self, summary: &Summary) -> io::Result<W> {
        match self.format {
            Format::Ndjson => {
                let s = serde_json::to_string(summary).expect("summary serialization");
                writeln!(self.out, "{{\"summary\":{s}}}")?;
            }
            Format::Csv => {
                if !self.header_written {
                    writeln!(self.out, "{}", csv_header())?;
                }
                writeln!(
                    self.out,
                    "# summary,tweets={},flagged={},unique_accounts={},malformed={},out_of_order={}",
                    summary.tweets,
                    summary.flagged,
                    summary.unique_accounts,
                    summary.malformed,
                    summary.out_of_order
                )?;
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}
