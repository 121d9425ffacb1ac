use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use regex::Regex;

use lineometer_cli::calibrate::calibrate;
use lineometer_cli::input::{load_lexicon, read_bytes, sources, InputFormat};
use lineometer_cli::plot::{chart, Which};
use lineometer_cli::render::{self, CsvSeries, Format, ReportRecord};
use lineometer_core::synth::isometric_verse;
use lineometer_core::{
    analyze_sequence, AnalysisOptions, Counting, GeneratorSpec, LengthFile, NyquistVariance,
    QnWindow, SigmaMode, Tail,
};

/// Bad flags or flag combinations; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

#[derive(Parser)]
#[command(
    name = "lineometer",
    version,
    about = "Word-length statistics for detecting lineation in English text"
)]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze text or length-sequence files.
    Analyze(AnalyzeArgs),
    /// Write a synthetic length-sequence file.
    Generate(GenerateArgs),
    /// Draw an SVG chart from a JSON report.
    Plot(PlotArgs),
    /// Measure detector false-positive rates on random-segmented corpora.
    Calibrate(CalibrateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TailArg {
    One,
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    /// Root of the summed squared deviations divided by the window length.
    RootSum,
    /// Population standard deviation over the window.
    Conventional,
    /// Median centre and 1.4826 x median absolute deviation.
    Robust,
}

#[derive(Clone, Copy, ValueEnum)]
enum NyquistArg {
    Full,
    Half,
}

#[derive(Args)]
struct AnalysisArgs {
    /// Largest n of the Q_n profile.
    #[arg(long, default_value_t = 200)]
    qn_max: usize,
    /// Range of n used for the Q_n centre and spread, as A..B.
    #[arg(long, default_value = "1..200")]
    window: QnWindow,
    /// Flag when tail probability x number of comparisons is below this.
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
    #[arg(long, value_enum, default_value = "one")]
    tail: TailArg,
    /// Spread estimate used to score Q_n.
    #[arg(long, value_enum, default_value = "robust")]
    sigma: SigmaArg,
    /// Let runs of words wrap past the end of the text.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    circular: bool,
    /// Variance of the half-frequency coefficient: delta or delta/2.
    #[arg(long, value_enum, default_value = "full")]
    nyquist_variance: NyquistArg,
    /// Largest lag of the correlation function.
    #[arg(long, default_value_t = 200)]
    max_lag: usize,
}

impl AnalysisArgs {
    fn options(&self) -> Result<AnalysisOptions> {
        if self.qn_max == 0 {
            return Err(usage("--qn-max must be at least 1"));
        }
        if self.window.end > self.qn_max {
            return Err(usage(format!(
                "--window {} extends past --qn-max {}",
                self.window, self.qn_max
            )));
        }
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(usage("--threshold must be a positive number"));
        }
        Ok(AnalysisOptions {
            qn_max: self.qn_max,
            window: self.window,
            threshold: self.threshold,
            tail: match self.tail {
                TailArg::One => Tail::One,
                TailArg::Two => Tail::Two,
            },
            sigma: match self.sigma {
                SigmaArg::RootSum => SigmaMode::RootSum,
                SigmaArg::Conventional => SigmaMode::Conventional,
                SigmaArg::Robust => SigmaMode::Robust,
            },
            counting: if self.circular {
                Counting::Circular
            } else {
                Counting::Truncated
            },
            nyquist_variance: match self.nyquist_variance {
                NyquistArg::Full => NyquistVariance::Full,
                NyquistArg::Half => NyquistVariance::Half,
            },
            max_lag: self.max_lag,
            ..AnalysisOptions::default()
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input files; `-` reads stdin.
    #[arg(required = true)]
    paths: Vec<String>,
    /// Tab-separated `word<TAB>syllables` exceptions added to the builtin list.
    #[arg(long, env = "LINEOMETER_LEXICON")]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    input: InputFormat,
    /// Split text inputs at lines matching this regex and analyze each part.
    #[arg(long, value_name = "REGEX")]
    split_chapters: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Series written with --format csv.
    #[arg(long, value_enum, default_value = "qn")]
    series: CsvSeries,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Files analyzed in parallel (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    analysis: AnalysisArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Geometric,
    Isometric,
    Alternating,
    Mixture,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Word-boundary probability (default 0.77 for prose, 0.7 inside verse lines).
    #[arg(long)]
    q: Option<f64>,
    /// Number of words.
    #[arg(long, alias = "words")]
    k: Option<usize>,
    /// Syllables per verse line.
    #[arg(long)]
    line: Option<u32>,
    /// Number of verse lines.
    #[arg(long)]
    lines: Option<usize>,
    #[arg(long)]
    long_mean: Option<f64>,
    #[arg(long)]
    short_mean: Option<f64>,
    /// Share of syllables drawn from verse (mixture).
    #[arg(long)]
    verse_fraction: Option<f64>,
    /// Word-boundary probability inside verse lines (mixture).
    #[arg(long, default_value_t = 0.7)]
    verse_q: f64,
    /// Verse lines per block (mixture).
    #[arg(long, default_value_t = 4)]
    block_lines: usize,
    /// Seed of the verse stream (mixture; default seed + 1).
    #[arg(long)]
    verse_seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Values per output line (isometric output is one verse line per row).
    #[arg(long, default_value_t = 20)]
    per_line: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// JSON report written by `analyze --format json`.
    report: PathBuf,
    #[arg(long, value_enum, default_value = "qn")]
    which: Which,
    /// Which record of a multi-file report to draw.
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long, default_value_t = 0.77)]
    q: f64,
    /// Words per corpus.
    #[arg(long, alias = "words", default_value_t = 20_000)]
    k: usize,
    /// Number of corpora.
    #[arg(long, default_value_t = 100)]
    seeds: usize,
    /// Seed of the first corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    analysis: AnalysisArgs,
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let opts = args.analysis.options()?;
    let chapters = args
        .split_chapters
        .as_deref()
        .map(Regex::new)
        .transpose()
        .map_err(|e| usage(format!("--split-chapters: {e}")))?;
    let lexicon = load_lexicon(args.lexicon.as_deref())?;
    let run = || -> Vec<Vec<ReportRecord>> {
        args.paths
            .par_iter()
            .map(|path| {
                let parsed = read_bytes(path).and_then(|bytes| {
                    sources(path, &bytes, args.input, &lexicon, chapters.as_ref())
                });
                match parsed {
                    Err(e) => vec![ReportRecord {
                        source: path.clone(),
                        report: None,
                        error: Some(format!("{e:#}")),
                    }],
                    Ok(srcs) if srcs.is_empty() => vec![ReportRecord {
                        source: path.clone(),
                        report: None,
                        error: Some("no words found".to_owned()),
                    }],
                    Ok(srcs) => srcs
                        .into_iter()
                        .map(
                            |s| match analyze_sequence(&s.name, s.kind, &s.sequence, &opts) {
                                Ok(r) => ReportRecord {
                                    source: s.name,
                                    report: Some(r),
                                    error: None,
                                },
                                Err(e) => ReportRecord {
                                    source: s.name,
                                    report: None,
                                    error: Some(e.to_string()),
                                },
                            },
                        )
                        .collect(),
                }
            })
            .collect()
    };
    let records: Vec<ReportRecord> = match args.jobs {
        Some(0) => return Err(usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(run),
        None => run(),
    }
    .into_iter()
    .flatten()
    .collect();
    for rec in &records {
        if let Some(e) = &rec.error {
            log::error!("{}: {e}", rec.source);
        }
    }
    let content = match args.format {
        Format::Text => render::text(&records),
        Format::Json => render::json(&records)?,
        Format::Csv => render::csv(&records, args.series)?,
    };
    emit(args.out.as_deref(), &content)?;
    Ok(if records.iter().any(|r| r.error.is_some()) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn required<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T> {
    value.ok_or_else(|| usage(format!("--kind {kind} needs {flag}")))
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let spec = match args.kind {
        Kind::Geometric => GeneratorSpec::Geometric {
            q: args.q.unwrap_or(0.77),
            words: required(args.k, "--k", "geometric")?,
            seed: args.seed,
        },
        Kind::Isometric => GeneratorSpec::Isometric {
            line: required(args.line, "--line", "isometric")?,
            lines: required(args.lines, "--lines", "isometric")?,
            q: args.q.unwrap_or(0.7),
            seed: args.seed,
        },
        Kind::Alternating => GeneratorSpec::Alternating {
            words: required(args.k, "--k", "alternating")?,
            long_mean: required(args.long_mean, "--long-mean", "alternating")?,
            short_mean: required(args.short_mean, "--short-mean", "alternating")?,
            seed: args.seed,
        },
        Kind::Mixture => GeneratorSpec::Mixture {
            prose: Box::new(GeneratorSpec::Geometric {
                q: args.q.unwrap_or(0.77),
                words: 0,
                seed: args.seed,
            }),
            verse: Box::new(GeneratorSpec::Isometric {
                line: required(args.line, "--line", "mixture")?,
                lines: 0,
                q: args.verse_q,
                seed: args.verse_seed.unwrap_or(args.seed.wrapping_add(1)),
            }),
            verse_fraction: required(args.verse_fraction, "--verse-fraction", "mixture")?,
            words: required(args.k, "--k", "mixture")?,
            block_lines: args.block_lines,
            seed: args.seed,
        },
    };
    let invalid = |e: lineometer_core::Error| usage(e.to_string());
    let sequence = spec.generate().map_err(invalid)?;
    let mut file = LengthFile::new(sequence);
    for (k, v) in spec.header() {
        file = file.with_header(k, v);
    }
    let content = match &spec {
        &GeneratorSpec::Isometric {
            line,
            lines,
            q,
            seed,
        } => {
            let verse = isometric_verse(line, lines, q, seed).map_err(invalid)?;
            file.render_grouped(verse.iter().map(Vec::as_slice))
        }
        _ => file.render(args.per_line),
    };
    emit(args.out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn plot(args: PlotArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.report)
        .with_context(|| format!("reading {}", args.report.display()))?;
    let records = render::parse_records(&text)?;
    let rec = records.get(args.index).ok_or_else(|| {
        usage(format!(
            "--index {} but the report has {} records",
            args.index,
            records.len()
        ))
    })?;
    let report = match (&rec.report, &rec.error) {
        (Some(r), _) => r,
        (None, e) => anyhow::bail!(
            "{} has no report: {}",
            rec.source,
            e.as_deref().unwrap_or("missing")
        ),
    };
    let svg = chart(report, args.which)?.render();
    emit(args.out.as_deref(), &svg)?;
    Ok(ExitCode::SUCCESS)
}

fn run_calibration(args: CalibrateArgs) -> Result<ExitCode> {
    let opts = args.analysis.options()?;
    if args.seeds == 0 {
        return Err(usage("--seeds must be at least 1"));
    }
    let c = calibrate(args.q, args.k, args.seeds, args.seed, &opts)
        .map_err(|e| usage(e.to_string()))?;
    let content = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&c)?),
        Format::Text => c.text(),
        Format::Csv => return Err(usage("calibrate writes text or json")),
    };
    emit(args.out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Generate(a) => generate(a),
        Command::Plot(a) => plot(a),
        Command::Calibrate(a) => run_calibration(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lineometer: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
