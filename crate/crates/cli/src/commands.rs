use std::io::{BufRead, Write};
use std::time::Instant;

use anyhow::{anyhow, Context};
use botwatch::analysis::{kmeans_1d, score_histogram, sweep_n, SweepRow};
use botwatch::ingest::{format_period, parse_record_bytes, read_stream, ParsedStream};
use botwatch::kv::KvDocument;
use botwatch::output::{RecordWriter, Summary};
use botwatch::synth::{evaluate, parse_labels, StreamPlan};
use botwatch::{process_stream, Detector};

use crate::{create, Command, ExitKind, Failure, RunContext};

const PROGRESS_EVERY: u64 = 10_000;
const MAX_REPORTED_MALFORMED: usize = 10;

pub(crate) fn run(command: &Command, ctx: &mut RunContext) -> Result<(), Failure> {
    match command {
        Command::Analyze => analyze(ctx),
        Command::Stats => stats(ctx),
        Command::Sweep {
            n,
            parallel,
            end_to_end,
        } => sweep(ctx, n, *parallel, *end_to_end),
        Command::Hist { bin_width } => hist(ctx, *bin_width),
        Command::Kmeans { k } => kmeans(ctx, *k),
        Command::Generate { labels } => generate(ctx, labels.as_deref()),
        Command::Evaluate { labels } => evaluate_cmd(ctx, labels),
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        error: anyhow::Error::new(e).context("write failed"),
    }
}

fn report_malformed(line: usize, reason: &impl std::fmt::Display, seen: usize) {
    if seen <= MAX_REPORTED_MALFORMED {
        eprintln!("warning: line {line}: {reason}, skipped");
    }
}

/// Streams line by line: memory stays bounded by the window.
fn analyze(ctx: &mut RunContext) -> Result<(), Failure> {
    let cfg = ctx.detection_config()?;
    let lexicons = ctx.lexicons()?;
    let mut input = ctx.open_input()?;
    let out = ctx.open_output()?;
    let mut writer = RecordWriter::new(out, ctx.global.format.into());
    let mut detector = Detector::new(cfg, lexicons);
    let started = Instant::now();

    let mut buf = Vec::new();
    let (mut line_no, mut malformed) = (0usize, 0u64);
    loop {
        buf.clear();
        let n = input
            .read_until(b'\n', &mut buf)
            .with_context(|| format!("reading {}", ctx.global.input))
            .input()?;
        if n == 0 {
            break;
        }
        line_no += 1;
        if buf.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        match parse_record_bytes(&buf) {
            Ok(record) => {
                let scored = detector.push(&record);
                writer.write(&scored).map_err(io_err)?;
            }
            Err(e) => {
                malformed += 1;
                report_malformed(line_no, &e, malformed as usize);
            }
        }
        let done = detector.report().tweets;
        if ctx.global.progress && done > 0 && done.is_multiple_of(PROGRESS_EVERY) {
            let rate = done as f64 / started.elapsed().as_secs_f64();
            eprint!("\rprocessed {done} tweets ({rate:.0} tweets/s)");
        }
    }
    let report = detector.report();
    writer
        .finish(&Summary::new(&report, malformed))
        .map_err(io_err)?;
    let wall = started.elapsed().as_secs_f64();
    if ctx.global.progress {
        eprintln!();
    }
    eprintln!(
        "{} tweets, {} flagged ({} accounts), {} malformed, {:.0} tweets/s",
        report.tweets, report.flagged, report.unique_accounts, malformed, report.tweets_per_sec
    );
    ctx.timing("scoring_elapsed_ms", report.elapsed_ms);
    ctx.timing("scoring_tweets_per_sec", report.tweets_per_sec);
    ctx.timing("wall_elapsed_ms", wall * 1000.0);
    Ok(())
}

fn load(ctx: &mut RunContext) -> Result<ParsedStream, Failure> {
    let input = ctx.open_input()?;
    let started = Instant::now();
    let parsed = read_stream(input)
        .with_context(|| format!("reading {}", ctx.global.input))
        .input()?;
    for (i, (line, e)) in parsed.malformed.iter().enumerate() {
        report_malformed(*line, e, i + 1);
    }
    ctx.timing("parse_elapsed_ms", started.elapsed().as_secs_f64() * 1000.0);
    Ok(parsed)
}

fn stats(ctx: &mut RunContext) -> Result<(), Failure> {
    let parsed = load(ctx)?;
    let s = parsed.stats();
    let out_of_order = botwatch::ingest::out_of_order_count(&parsed.records);
    let mut out = ctx.open_output()?;
    writeln!(
        out,
        "tweet_count: {}\nperiod: {}\nperiod_ms: {}\nmalformed_count: {}\nout_of_order_count: {}",
        s.tweet_count,
        format_period(s.period_ms),
        s.period_ms,
        s.malformed_count,
        out_of_order
    )
    .and_then(|_| out.flush())
    .map_err(io_err)
}

fn sweep(
    ctx: &mut RunContext,
    n: &[usize],
    parallel: bool,
    end_to_end: bool,
) -> Result<(), Failure> {
    let cfg = ctx.detection_config()?;
    let lexicons = ctx.lexicons()?;
    let rows: Vec<SweepRow> = if end_to_end {
        if n.is_empty() || n.contains(&0) {
            return Err(anyhow!("--n needs window sizes >= 1")).config();
        }
        if ctx.global.input == "-" {
            return Err(anyhow!(
                "--end-to-end rereads the input and needs --in PATH"
            ))
            .config();
        }
        let mut rows = Vec::with_capacity(n.len());
        for &size in n {
            let started = Instant::now();
            let parsed = load(ctx)?;
            let cfg = botwatch::DetectionConfig {
                window_n: size,
                ..cfg.clone()
            };
            let (_, report) = process_stream(&parsed.records, &cfg, &lexicons);
            let secs = started.elapsed().as_secs_f64();
            rows.push(SweepRow {
                n: size,
                tweets_per_sec: if secs > 0.0 {
                    report.tweets as f64 / secs
                } else {
                    0.0
                },
                elapsed_ms: (secs * 1000.0) as u64,
                bots_detected: report.flagged,
            });
        }
        rows
    } else {
        let parsed = load(ctx)?;
        sweep_n(&parsed.records, n, &cfg, &lexicons, parallel).config()?
    };
    if parallel {
        eprintln!("warning: --parallel runs overlap; timings are not comparable");
    }

    let mut out = ctx.open_output()?;
    let mut csv = String::from("n,tweets_per_sec,elapsed_ms,bots_detected\n");
    let mut table = format!(
        "{:>6}  {:>14}  {:>10}  {:>13}\n",
        "N", "tweets/sec", "elapsed ms", "bots detected"
    );
    for r in &rows {
        csv.push_str(&format!(
            "{},{:.4},{},{}\n",
            r.n, r.tweets_per_sec, r.elapsed_ms, r.bots_detected
        ));
        table.push_str(&format!(
            "{:>6}  {:>14.4}  {:>10}  {:>13}\n",
            r.n, r.tweets_per_sec, r.elapsed_ms, r.bots_detected
        ));
    }
    eprint!("{table}");
    ctx.timing("parallel", parallel);
    ctx.timing("end_to_end", end_to_end);
    out.write_all(csv.as_bytes())
        .and_then(|_| out.flush())
        .map_err(io_err)
}

/// Scores the input with the effective config and returns the percentages in stream order.
fn scored(ctx: &mut RunContext) -> Result<(Vec<String>, Vec<f64>), Failure> {
    let cfg = ctx.detection_config()?;
    let lexicons = ctx.lexicons()?;
    let parsed = load(ctx)?;
    let (tweets, report) = process_stream(&parsed.records, &cfg, &lexicons);
    ctx.timing("scoring_elapsed_ms", report.elapsed_ms);
    Ok(tweets
        .into_iter()
        .map(|t| (t.tweet_id, t.breakdown.percentage))
        .unzip())
}

fn hist(ctx: &mut RunContext, bin_width: f64) -> Result<(), Failure> {
    let (_, scores) = scored(ctx)?;
    let bins = score_histogram(&scores, bin_width).config()?;
    let mut out = ctx.open_output()?;
    let mut text = String::from("bin_start,count\n");
    for (edge, count) in bins {
        text.push_str(&format!("{edge:.6},{count}\n"));
    }
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(io_err)
}

fn kmeans(ctx: &mut RunContext, k: usize) -> Result<(), Failure> {
    let (ids, scores) = scored(ctx)?;
    let result = match kmeans_1d(&scores, k, ctx.global.seed) {
        Ok(r) => r,
        // too few distinct scores is a property of the data, not the flags
        Err(e @ botwatch::analysis::AnalysisError::TooFewDistinct { .. }) => return Err(e).input(),
        Err(e) => return Err(e).config(),
    };
    let join = |xs: &[f64]| {
        xs.iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut text = format!(
        "# k={} seed={} iterations={} inertia={:.6}\n# centroids={}\n# boundaries={}\nindex,tweet_id,score,cluster\n",
        result.k,
        result.seed,
        result.iterations,
        result.inertia,
        join(&result.centroids),
        join(&result.boundaries())
    );
    for (i, ((id, score), cluster)) in ids.iter().zip(&scores).zip(&result.assignments).enumerate()
    {
        text.push_str(&format!("{i},{id},{score:.6},{cluster}\n"));
    }
    let mut out = ctx.open_output()?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(io_err)
}

fn generate(ctx: &mut RunContext, labels: Option<&std::path::Path>) -> Result<(), Failure> {
    let plan = match &ctx.global.config {
        None => StreamPlan::benchmark(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read plan {}", path.display()))
                .config()?;
            let doc = KvDocument::parse(&text).config()?;
            StreamPlan::from_kv(&doc).config()?
        }
    };
    let stream = plan.generate(ctx.global.seed).config()?;
    let mut out = ctx.open_output()?;
    out.write_all(stream.to_ndjson().as_bytes())
        .and_then(|_| out.flush())
        .map_err(io_err)?;
    if let Some(path) = labels {
        let mut f = create(path)?;
        f.write_all(stream.labels_csv().as_bytes())
            .and_then(|_| f.flush())
            .map_err(io_err)?;
        ctx.manifest.extra_outputs.push(path.to_path_buf());
    }
    let bots = stream.labels.iter().filter(|&&b| b).count();
    eprintln!(
        "{} records ({bots} bot), seed {}",
        stream.records.len(),
        ctx.global.seed
    );
    Ok(())
}

fn evaluate_cmd(ctx: &mut RunContext, labels_path: &std::path::Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(labels_path)
        .with_context(|| format!("cannot read labels {}", labels_path.display()))
        .input()?;
    let labels = parse_labels(&text)
        .with_context(|| format!("in {}", labels_path.display()))
        .input()?;
    let cfg = ctx.detection_config()?;
    let lexicons = ctx.lexicons()?;
    let parsed = load(ctx)?;
    let (tweets, _) = process_stream(&parsed.records, &cfg, &lexicons);
    let mut truth = Vec::with_capacity(tweets.len());
    for t in &tweets {
        let label = labels
            .get(&t.tweet_id)
            .ok_or_else(|| {
                anyhow!(
                    "tweet {} has no label in {}",
                    t.tweet_id,
                    labels_path.display()
                )
            })
            .input()?;
        truth.push(*label);
    }
    let predicted: Vec<bool> = tweets.iter().map(|t| t.breakdown.is_bot).collect();
    let metrics = evaluate(&truth, &predicted).input()?;
    let json = serde_json::to_string(&metrics)
        .context("serializing metrics")
        .input()?;
    let mut out = ctx.open_output()?;
    writeln!(out, "{json}")
        .and_then(|_| out.flush())
        .map_err(io_err)
}
