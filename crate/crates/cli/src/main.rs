//! `botwatch`: sliding-window bot-net detection from the command line.

mod commands;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use botwatch::output::Format;
use botwatch::scorer::load_config;
use botwatch::{DetectionConfig, GenderLexicon, Lexicons, SentimentLexicon};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "botwatch",
    version,
    about = "Detect coordinated bot activity in tweet streams"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Key/value config file. For `generate` this is the stream plan.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Input stream, `-` for stdin.
    #[arg(long = "in", global = true, value_name = "PATH|-", default_value = "-")]
    input: String,
    /// Output file. Defaults to stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Record format for `analyze`.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Ndjson)]
    format: OutputFormat,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Print running throughput to stderr.
    #[arg(long, global = true)]
    progress: bool,
    /// Sentiment lexicon (`token<TAB>valence`) replacing the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    sentiment_lexicon: Option<PathBuf>,
    /// Gender lexicon (`name<TAB>m|f`) replacing the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    gender_lexicon: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Ndjson,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Ndjson => Format::Ndjson,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Score every tweet against its window and emit one record per tweet.
    Analyze,
    /// Count tweets, the covered period and malformed lines.
    Stats,
    /// Rerun detection for several window sizes.
    Sweep {
        /// Window sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50")]
        n: Vec<usize>,
        /// Run window sizes concurrently. Timings are then not comparable.
        #[arg(long)]
        parallel: bool,
        /// Include parsing in the timings.
        #[arg(long)]
        end_to_end: bool,
    },
    /// Histogram of score percentages as `bin_start,count`.
    Hist {
        #[arg(long, default_value_t = 0.01)]
        bin_width: f64,
    },
    /// Cluster score percentages in one dimension.
    Kmeans {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Write a synthetic labeled stream.
    Generate {
        /// Where to write the `tweet_id,is_bot` labels.
        #[arg(long, value_name = "PATH")]
        labels: Option<PathBuf>,
    },
    /// Compare detections against a labels file.
    Evaluate {
        #[arg(long, value_name = "PATH")]
        labels: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Stats => "stats",
            Command::Sweep { .. } => "sweep",
            Command::Hist { .. } => "hist",
            Command::Kmeans { .. } => "kmeans",
            Command::Generate { .. } => "generate",
            Command::Evaluate { .. } => "evaluate",
        }
    }
}

/// An error plus the exit code it maps to.
pub(crate) struct Failure {
    code: u8,
    error: anyhow::Error,
}

pub(crate) trait ExitKind<T> {
    /// Bad input data or unreadable files: exit 1.
    fn input(self) -> Result<T, Failure>;
    /// Bad configuration: exit 2.
    fn config(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> ExitKind<T> for Result<T, E> {
    fn input(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code: 1,
            error: e.into(),
        })
    }

    fn config(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code: 2,
            error: e.into(),
        })
    }
}

/// Everything a command needs besides its own flags.
pub(crate) struct RunContext {
    pub global: Global,
    pub manifest: Manifest,
}

#[derive(Serialize)]
pub(crate) struct Manifest {
    pub subcommand: &'static str,
    pub config: Option<DetectionConfig>,
    pub config_path: Option<PathBuf>,
    pub input: Option<String>,
    pub output: Option<PathBuf>,
    pub extra_outputs: Vec<PathBuf>,
    pub seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub version: &'static str,
    pub exit_code: u8,
    /// Free-form measurements such as elapsed time and throughput.
    pub timings: serde_json::Map<String, serde_json::Value>,
}

impl RunContext {
    pub fn detection_config(&mut self) -> Result<DetectionConfig, Failure> {
        let path = self.global.config.as_deref();
        let cfg = load_config(path).config()?;
        self.manifest.config = Some(cfg.clone());
        Ok(cfg)
    }

    pub fn lexicons(&self) -> Result<Lexicons, Failure> {
        let sentiment = match &self.global.sentiment_lexicon {
            Some(p) => SentimentLexicon::from_path(p).config()?,
            None => SentimentLexicon::bundled(),
        };
        let gender = match &self.global.gender_lexicon {
            Some(p) => GenderLexicon::from_path(p).config()?,
            None => GenderLexicon::bundled(),
        };
        Ok(Lexicons::new(sentiment, gender))
    }

    pub fn open_input(&mut self) -> Result<Box<dyn BufRead>, Failure> {
        self.manifest.input = Some(self.global.input.clone());
        if self.global.input == "-" {
            return Ok(Box::new(BufReader::new(io::stdin().lock())));
        }
        let path = &self.global.input;
        let file = File::open(path)
            .with_context(|| format!("cannot open input {path}"))
            .input()?;
        Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
    }

    pub fn open_output(&mut self) -> Result<Box<dyn Write>, Failure> {
        self.manifest.output = self.global.out.clone();
        match &self.global.out {
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
            Some(path) => create(path).map(|f| Box::new(f) as Box<dyn Write>),
        }
    }

    pub fn timing(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.manifest.timings.insert(key.to_string(), value.into());
    }
}

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
        .input()
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

fn write_manifest(manifest: &Manifest) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(manifest)?;
    match &manifest.output {
        Some(out) => {
            let mut path = out.clone().into_os_string();
            path.push(".manifest.json");
            std::fs::write(&path, json + "\n").with_context(|| {
                format!("cannot write manifest {}", PathBuf::from(path).display())
            })?;
        }
        None => eprintln!("{}", serde_json::to_string(manifest)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version exit 0, usage errors exit 2
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut ctx = RunContext {
        manifest: Manifest {
            subcommand: cli.command.name(),
            config: None,
            config_path: cli.global.config.clone(),
            input: None,
            output: None,
            extra_outputs: Vec::new(),
            seed: cli.global.seed,
            started_at: now(),
            finished_at: String::new(),
            version: env!("CARGO_PKG_VERSION"),
            exit_code: 0,
            timings: serde_json::Map::new(),
        },
        global: cli.global,
    };
    let result = commands::run(&cli.command, &mut ctx);
    ctx.manifest.finished_at = now();
    let mut code = 0;
    if let Err(Failure { code: c, error }) = result {
        eprintln!("error: {error:#}");
        code = c;
    }
    ctx.manifest.exit_code = code;
    // written for failed runs too, so every invocation leaves exactly one
    if let Err(e) = write_manifest(&ctx.manifest) {
        eprintln!("error: {e:#}");
        code = code.max(1);
    }
    ExitCode::from(code)
}
