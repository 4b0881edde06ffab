//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or lexicon error, 3 no
//! identifiers found, 4 evaluation found an imperfect tag.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cloudmodel::{
    build_cloud, build_tags, compute_stats, CloudKind, FilterConfig, TagCloud,
};
use crate::evaluator::evaluate;
use crate::extractor::{load_corpus, Corpus};
use crate::renderer::{render_html, render_svg, RenderConfig};
use crate::stemmer::StemLexicon;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_IMPERFECT: i32 = 4;

/// Set to `1` to parse files on one thread.
pub const NO_PARALLEL_ENV: &str = "CODECLOUD_NO_PARALLEL";

#[derive(Debug, Parser)]
#[command(
    name = "codecloud",
    version,
    about = "Tag clouds from the identifiers of a Java source tree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a tag cloud.
    Cloud(CloudArgs),
    /// Print identifier and tag counts.
    Stats(StatsArgs),
    /// Check every tag weight against a brute-force count.
    Eval(EvalArgs),
    /// List every extracted identifier.
    DumpIdentifiers(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CloudFormat {
    Svg,
    Html,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Root of the Java source tree.
    pub root: PathBuf,
    /// Corpus name used in reports; defaults to the root directory name.
    #[arg(long)]
    pub label: Option<String>,
    /// Output file, or `-` for standard output.
    #[arg(short = 'o', long = "out", default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct LexiconArgs {
    /// Stop-word list replacing the built-in one.
    #[arg(long = "stopwords", value_name = "FILE")]
    pub stopwords: Option<PathBuf>,
    /// Exception list replacing the built-in one.
    #[arg(long = "exceptions", value_name = "FILE")]
    pub exceptions: Option<PathBuf>,
    /// Keep stop words.
    #[arg(long = "no-stopwords")]
    pub no_stopwords: bool,
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, value_enum, default_value_t = CloudKind::All)]
    pub kind: CloudKind,
    /// Drop tags shorter than N characters.
    #[arg(
        long = "min-tag-len",
        value_name = "N",
        conflicts_with = "no_short_filter"
    )]
    pub min_tag_len: Option<usize>,
    /// Keep tags of every length (the default).
    #[arg(long = "no-short-filter")]
    pub no_short_filter: bool,
    /// Append each tag's weight in brackets.
    #[arg(long = "show-freq")]
    pub show_freq: bool,
    #[arg(long, value_enum, default_value_t = CloudFormat::Svg)]
    pub format: CloudFormat,
    #[arg(long = "page-width", value_name = "PX", default_value_t = 1000.0)]
    pub page_width: f64,
    #[arg(long = "min-font", value_name = "PT", default_value_t = 10.0)]
    pub min_font: f64,
    #[arg(long = "max-font", value_name = "PT", default_value_t = 40.0)]
    pub max_font: f64,
    /// Capitalize the first letter of each label.
    #[arg(long = "title-case")]
    pub title_case: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, value_enum, default_value_t = StatsFormat::Table)]
    pub format: StatsFormat,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub lexicon: LexiconArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
    /// Test hook: add this offset to every cloud weight before evaluating.
    #[arg(
        long = "inject-weight-offset",
        hide = true,
        allow_negative_numbers = true,
        default_value_t = 0
    )]
    pub inject_weight_offset: i64,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = CloudKind::All)]
    pub kind: CloudKind,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
}

/// A failure that maps to a non-zero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_IO, e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("codecloud: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: &Command) -> Result<i32, Failure> {
    match command {
        Command::Cloud(a) => cmd_cloud(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Eval(a) => cmd_eval(a),
        Command::DumpIdentifiers(a) => cmd_dump(a),
    }
}

fn parallel_enabled() -> bool {
    std::env::var(NO_PARALLEL_ENV).map_or(true, |v| v != "1")
}

fn corpus_label(args: &CorpusArgs) -> String {
    if let Some(label) = &args.label {
        return label.clone();
    }
    let name = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned());
    name(&args.root)
        .or_else(|| args.root.canonicalize().ok().as_deref().and_then(name))
        .unwrap_or_else(|| args.root.display().to_string())
}

fn load(args: &CorpusArgs) -> Result<Corpus, Failure> {
    let mut corpus = load_corpus(&args.root, parallel_enabled()).map_err(io_err)?;
    corpus.label = corpus_label(args);
    for (path, d) in &corpus.diagnostics {
        log::info!("{}:{d}", path.display());
    }
    Ok(corpus)
}

fn lexicon(args: &LexiconArgs) -> Result<StemLexicon, Failure> {
    if args.exceptions.is_none() && args.stopwords.is_none() {
        return Ok(StemLexicon::embedded().clone());
    }
    StemLexicon::with_overrides(args.exceptions.as_deref(), args.stopwords.as_deref())
        .map_err(io_err)
}

fn write_output(out: &str, content: &str) -> Result<(), Failure> {
    if out == "-" {
        let mut stdout = io::stdout().lock();
        stdout
            .write_all(content.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(io_err)
    } else {
        fs::write(out, content).map_err(|e| io_err(format!("{out}: {e}")))
    }
}

fn ensure_nonempty(corpus: &Corpus) -> Result<(), Failure> {
    if corpus.identifiers.is_empty() {
        return Err(Failure::new(
            EXIT_EMPTY,
            format!(
                "no identifiers found under {} ({} Java files)",
                corpus.label, corpus.file_count
            ),
        ));
    }
    Ok(())
}

fn summary(corpus: &Corpus, tags: usize, started: Instant) {
    eprintln!(
        "codecloud: {}: {} identifiers, {} tags, {} ms",
        corpus.label,
        corpus.identifiers.len(),
        tags,
        started.elapsed().as_millis()
    );
}

/// Builds the filter settings the `cloud` flags describe.
pub fn filter_config(args: &CloudArgs) -> FilterConfig {
    let defaults = FilterConfig::default();
    FilterConfig {
        short_tag_enabled: args.min_tag_len.is_some(),
        min_tag_length: args.min_tag_len.unwrap_or(defaults.min_tag_length),
        show_frequency: args.show_freq,
        stop_words_enabled: !args.lexicon.no_stopwords,
    }
}

/// Builds the render settings the `cloud` flags describe.
pub fn render_config(args: &CloudArgs) -> RenderConfig {
    RenderConfig {
        page_width_px: args.page_width,
        min_font_pt: args.min_font,
        max_font_pt: args.max_font,
        title_case: args.title_case,
        ..RenderConfig::default()
    }
}

/// Serializes `cloud` in `format`.
pub fn format_cloud(
    cloud: &TagCloud,
    format: CloudFormat,
    render: &RenderConfig,
) -> Result<String, Failure> {
    match format {
        CloudFormat::Svg => render_svg(cloud, render).map_err(usage),
        CloudFormat::Html => render_html(cloud, render).map_err(usage),
        CloudFormat::Json => cloud.to_json().map_err(io_err),
        CloudFormat::Csv => cloud.to_csv().map_err(io_err),
    }
}

fn cmd_cloud(args: &CloudArgs) -> Result<i32, Failure> {
    let started = Instant::now();
    let filters = filter_config(args);
    filters.validate().map_err(usage)?;
    let render = render_config(args);
    render.validate().map_err(usage)?;
    let lex = lexicon(&args.lexicon)?;

    let corpus = load(&args.corpus)?;
    ensure_nonempty(&corpus)?;
    let cloud =
        build_cloud(&corpus.label, &corpus.identifiers, args.kind, &lex, filters).map_err(usage)?;
    let text = format_cloud(&cloud, args.format, &render)?;
    write_output(&args.corpus.out, &text)?;
    summary(&corpus, cloud.tags.len(), started);
    Ok(EXIT_OK)
}

fn cmd_stats(args: &StatsArgs) -> Result<i32, Failure> {
    let started = Instant::now();
    let lex = lexicon(&args.lexicon)?;
    let corpus = load(&args.corpus)?;
    let filters = FilterConfig {
        stop_words_enabled: !args.lexicon.no_stopwords,
        ..FilterConfig::default()
    };
    let tags = build_tags(&corpus.identifiers, CloudKind::All, &lex, &filters);
    let stats = compute_stats(
        &corpus.identifiers,
        &tags,
        started.elapsed().as_millis() as u64,
    );
    let text = match args.format {
        StatsFormat::Table => stats.to_table(&corpus.label),
        StatsFormat::Csv => stats.to_csv(&corpus.label).map_err(io_err)?,
        StatsFormat::Json => serde_json::to_string_pretty(&stats).map_err(io_err)? + "\n",
    };
    write_output(&args.corpus.out, &text)?;
    ensure_nonempty(&corpus)?;
    Ok(EXIT_OK)
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, Failure> {
    let started = Instant::now();
    let lex = lexicon(&args.lexicon)?;
    let corpus = load(&args.corpus)?;
    ensure_nonempty(&corpus)?;
    let filters = FilterConfig {
        stop_words_enabled: !args.lexicon.no_stopwords,
        ..FilterConfig::default()
    };
    let mut cloud = build_cloud(
        &corpus.label,
        &corpus.identifiers,
        CloudKind::All,
        &lex,
        filters,
    )
    .map_err(usage)?;
    if args.inject_weight_offset != 0 {
        for tag in &mut cloud.tags {
            tag.weight = (tag.weight as i64 + args.inject_weight_offset).max(0) as usize;
        }
    }
    let report = evaluate(&cloud, &corpus.identifiers, &lex).map_err(io_err)?;
    let text = match args.format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => report.to_json(),
    }
    .map_err(io_err)?;
    write_output(&args.corpus.out, &text)?;
    summary(&corpus, cloud.tags.len(), started);

    let imperfect = report.imperfect_rows().count();
    if imperfect > 0 {
        eprintln!(
            "codecloud: {imperfect} of {} tags imperfect",
            report.rows.len()
        );
        return Ok(EXIT_IMPERFECT);
    }
    Ok(EXIT_OK)
}

fn cmd_dump(args: &DumpArgs) -> Result<i32, Failure> {
    let corpus = load(&args.corpus)?;
    let ids: Vec<_> = corpus
        .identifiers
        .iter()
        .filter(|id| args.kind.selects(id.kind))
        .collect();
    let text = match args.format {
        ReportFormat::Json => serde_json::to_string_pretty(&ids).map_err(io_err)? + "\n",
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["kind", "simpleName", "qualifiedName", "file", "line"])
                .map_err(io_err)?;
            for id in &ids {
                w.write_record([
                    id.kind.to_string(),
                    id.simple_name.clone(),
                    id.qualified_name.clone(),
                    id.file.to_string_lossy().replace('\\', "/"),
                    id.line.to_string(),
                ])
                .map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| io_err(e.error()))?)
                .expect("csv of utf-8 input")
        }
    };
    write_output(&args.corpus.out, &text)?;
    ensure_nonempty(&corpus)?;
    Ok(EXIT_OK)
}
