use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ackmine::corpus::{write_corpus_jsonl, CorpusFilter};
use ackmine::disambiguation::{disambiguate_spans, write_entities_jsonl, DisambiguationConfig};
use ackmine::pipeline::{
    analyze, expand_inputs, filter_short_spans, import_tags, ingest, load_abbreviations, load_domain_map,
    load_gazetteer, load_overrides, read_corpus_file, read_entities_file, read_tags_file, run_pipeline,
    tag_baseline, write_report, ErrorKind, PipelineConfig, PipelineError, TaggerMode,
};
use ackmine::tagging::{evaluate_tagger, write_tags_jsonl, BaselineTagger};

const REPORT_DIR_ENV: &str = "ACKMINE_REPORT_DIR";

/// Mine acknowledged entities from field-tagged bibliographic exports.
///
/// Exit codes: 0 success, 1 i/o, 2 configuration or usage, 3 parse,
/// 4 validation, 5 statistics.
#[derive(Parser)]
#[command(name = "ackmine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse field-tagged files, assign domains, filter and sample.
    Ingest(IngestArgs),
    /// Produce entity spans, by the gazetteer baseline or from an external file.
    #[command(subcommand)]
    Tag(TagCommand),
    /// Score predicted spans against gold spans (exact match per label).
    Evaluate(EvaluateArgs),
    /// Merge span surfaces into canonical entities.
    Disambiguate(DisambiguateArgs),
    /// Compute every table and plot-data file from a tagged corpus.
    Analyze(AnalyzeArgs),
    /// Run ingest, tag, disambiguate and analyze from one config.
    Run(Box<RunArgs>),
}

#[derive(Args)]
struct IngestArgs {
    /// Field-tagged input files; glob patterns allowed.
    #[arg(long = "input", required = true, num_args = 1..)]
    inputs: Vec<String>,
    /// Output corpus, one JSON record per line.
    #[arg(long)]
    out: PathBuf,
    /// CSV `classification,domain` replacing the built-in discipline list.
    #[arg(long)]
    domain_map: Option<PathBuf>,
    #[arg(long, default_value_t = 2014)]
    year_min: i32,
    #[arg(long, default_value_t = 2019)]
    year_max: i32,
    #[arg(long = "languages", visible_alias = "language", num_args = 1.., default_values_t = ["English".to_string()])]
    languages: Vec<String>,
    #[arg(long = "doc-types", visible_alias = "doc-type", num_args = 1.., default_values_t = ["Article".to_string(), "Review".to_string()])]
    doc_types: Vec<String>,
    /// Keep at most this many records per domain.
    #[arg(long, requires = "seed")]
    sample_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write funding coverage per domain (before sampling) as CSV.
    #[arg(long)]
    coverage: Option<PathBuf>,
    /// Fail on any unparseable record instead of skipping it.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum TagCommand {
    /// Dictionary and cue-word tagger.
    Baseline(BaselineArgs),
    /// Validate and import spans from the tag-interchange format.
    Import(ImportArgs),
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    fund_gazetteer: Option<PathBuf>,
    #[arg(long)]
    uni_gazetteer: Option<PathBuf>,
    #[arg(long)]
    cor_gazetteer: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ImportArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Interchange file: {record_id, start, end, text, label} per line.
    #[arg(long)]
    tags: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Fail on any rejected line instead of skipping it.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    predicted: PathBuf,
    #[arg(long)]
    gold: PathBuf,
    /// Write the report as JSON here instead of printing a table.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Thresholds {
    /// Minimum ratio (exclusive) for a gazetteer name match.
    #[arg(long)]
    name_threshold: Option<u8>,
    /// Minimum ratio (exclusive) for a gazetteer abbreviation match.
    #[arg(long)]
    abbrev_threshold: Option<u8>,
    /// Minimum partial ratio (exclusive) for corporation clustering.
    #[arg(long)]
    cor_partial_threshold: Option<u8>,
    /// Minimum ratio (exclusive) for merging misspellings.
    #[arg(long)]
    misspell_threshold: Option<u8>,
    /// IND and GRNB mentions shorter than this are dropped.
    #[arg(long)]
    min_chars: Option<usize>,
}

impl Thresholds {
    fn apply(&self, c: &mut PipelineConfig) {
        if let Some(v) = self.name_threshold {
            c.name_threshold = v;
        }
        if let Some(v) = self.abbrev_threshold {
            c.abbrev_threshold = v;
        }
        if let Some(v) = self.cor_partial_threshold {
            c.cor_partial_threshold = v;
        }
        if let Some(v) = self.misspell_threshold {
            c.misspell_threshold = v;
        }
        if let Some(v) = self.min_chars {
            c.min_chars = v;
        }
    }

    fn config(&self) -> Result<DisambiguationConfig, PipelineError> {
        let mut c = PipelineConfig::default();
        self.apply(&mut c);
        for (name, v) in [
            ("name-threshold", c.name_threshold),
            ("abbrev-threshold", c.abbrev_threshold),
            ("cor-partial-threshold", c.cor_partial_threshold),
            ("misspell-threshold", c.misspell_threshold),
        ] {
            if v > 100 {
                return Err(PipelineError::config(format!("--{name} {v} is outside [0, 100]")));
            }
        }
        Ok(c.disambiguation())
    }
}

#[derive(Args)]
struct DisambiguateArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    tags: PathBuf,
    #[arg(long)]
    fund_gazetteer: Option<PathBuf>,
    #[arg(long)]
    uni_gazetteer: Option<PathBuf>,
    /// CSV `surface,from_label,to_label` applied after merging.
    #[arg(long)]
    overrides: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    thresholds: Thresholds,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    entities: PathBuf,
    #[arg(long)]
    tags: PathBuf,
    #[arg(long, env = REPORT_DIR_ENV)]
    report_dir: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    bootstrap_resamples: usize,
    #[arg(long, default_value_t = 30)]
    top_k: usize,
    /// One abbreviation per line that must not end a sentence.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    min_chars: usize,
    /// Fail when a contingency table cannot be tested.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Flat TOML file; every key can be overridden by the flag of the same name.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, num_args = 1..)]
    corpus: Vec<String>,
    #[arg(long)]
    fund_gazetteer: Option<PathBuf>,
    #[arg(long)]
    uni_gazetteer: Option<PathBuf>,
    #[arg(long)]
    cor_gazetteer: Option<PathBuf>,
    #[arg(long)]
    overrides: Option<PathBuf>,
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    #[arg(long)]
    domain_map: Option<PathBuf>,
    #[arg(long)]
    tags: Option<PathBuf>,
    #[arg(long, env = REPORT_DIR_ENV)]
    report_dir: Option<PathBuf>,
    #[arg(long)]
    year_min: Option<i32>,
    #[arg(long)]
    year_max: Option<i32>,
    #[arg(long = "languages", visible_alias = "language", num_args = 1..)]
    languages: Vec<String>,
    #[arg(long = "doc-types", visible_alias = "doc-type", num_args = 1..)]
    doc_types: Vec<String>,
    #[arg(long)]
    sample_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// baseline or import
    #[arg(long)]
    tagger: Option<TaggerMode>,
    #[command(flatten)]
    thresholds: Thresholds,
    #[arg(long)]
    bootstrap_resamples: Option<usize>,
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    strict: bool,
}

impl RunArgs {
    fn into_config(self) -> Result<PipelineConfig, PipelineError> {
        let mut c = match &self.config {
            Some(p) => PipelineConfig::from_path(p)?,
            None => PipelineConfig::default(),
        };
        if !self.corpus.is_empty() {
            c.corpus = self.corpus;
        }
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field {
                    c.$field = Some(v);
                }
            )*};
        }
        set!(fund_gazetteer, uni_gazetteer, cor_gazetteer, overrides, abbreviations, domain_map, tags, sample_n, seed);
        if let Some(v) = self.report_dir {
            c.report_dir = v;
        }
        if let Some(v) = self.year_min {
            c.year_min = v;
        }
        if let Some(v) = self.year_max {
            c.year_max = v;
        }
        if !self.languages.is_empty() {
            c.languages = self.languages;
        }
        if !self.doc_types.is_empty() {
            c.doc_types = self.doc_types;
        }
        if let Some(v) = self.tagger {
            c.tagger = v;
        }
        self.thresholds.apply(&mut c);
        if let Some(v) = self.bootstrap_resamples {
            c.bootstrap_resamples = v;
        }
        if let Some(v) = self.top_k {
            c.top_k = v;
        }
        c.strict |= self.strict;
        Ok(c)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, PipelineError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| PipelineError::io(path, e))
}

fn write_with<F>(path: &Path, f: F) -> Result<(), PipelineError>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| PipelineError::io(path, e))
}

fn cmd_ingest(a: IngestArgs) -> Result<(), PipelineError> {
    let files = expand_inputs(&a.inputs)?;
    let filter = CorpusFilter::new(a.year_min, a.year_max, &a.languages, &a.doc_types)
        .map_err(|e| PipelineError::config(e.to_string()))?;
    let map = load_domain_map(a.domain_map.as_deref())?;
    let sample = a.sample_n.map(|n| (n, a.seed.expect("clap requires seed")));
    let out = ingest(&files, &map, &filter, sample, a.strict)?;
    write_with(&a.out, |w| write_corpus_jsonl(w, &out.records))?;
    if let Some(p) = &a.coverage {
        let mut w = csv::Writer::from_writer(create(p)?);
        for row in &out.coverage {
            w.serialize(row).map_err(|e| PipelineError::io(p, e))?;
        }
        w.flush().map_err(|e| PipelineError::io(p, e))?;
    }
    let c = &out.counts;
    eprintln!(
        "{} files, {} records parsed, {} rejected, {} after filter, {} written",
        c.files, c.parsed, c.rejected, c.after_filter, c.selected
    );
    Ok(())
}

fn cmd_tag(t: TagCommand) -> Result<(), PipelineError> {
    match t {
        TagCommand::Baseline(a) => {
            let corpus = read_corpus_file(&a.corpus)?;
            let tagger = BaselineTagger::new(
                &load_gazetteer(a.fund_gazetteer.as_deref(), "funding")?,
                &load_gazetteer(a.uni_gazetteer.as_deref(), "university")?,
                &load_gazetteer(a.cor_gazetteer.as_deref(), "corporation")?,
            );
            let spans = tag_baseline(&corpus, &tagger);
            write_with(&a.out, |w| write_tags_jsonl(w, &spans))?;
            eprintln!("{} spans", spans.len());
        }
        TagCommand::Import(a) => {
            let corpus = read_corpus_file(&a.corpus)?;
            let (spans, rejected) = import_tags(&a.tags, &corpus, a.strict)?;
            write_with(&a.out, |w| write_tags_jsonl(w, &spans))?;
            eprintln!("{} spans accepted, {} lines rejected", spans.len(), rejected.len());
        }
    }
    Ok(())
}

fn cmd_evaluate(a: EvaluateArgs) -> Result<(), PipelineError> {
    let report = evaluate_tagger(&read_tags_file(&a.predicted)?, &read_tags_file(&a.gold)?);
    match &a.out {
        Some(p) => write_with(p, |w| {
            serde_json::to_writer_pretty(&mut *w, &report)?;
            w.write_all(b"\n")
        })?,
        None => {
            println!("label\tprecision\trecall\tf1\ttp\tpredicted\tgold");
            for (label, s) in &report.per_label {
                println!(
                    "{label}\t{:.4}\t{:.4}\t{:.4}\t{}\t{}\t{}",
                    s.precision, s.recall, s.f1, s.true_positives, s.predicted, s.gold
                );
            }
            println!("accuracy (mean F1)\t{:.4}", report.accuracy);
        }
    }
    Ok(())
}

fn cmd_disambiguate(a: DisambiguateArgs) -> Result<(), PipelineError> {
    let config = a.thresholds.config()?;
    let corpus = read_corpus_file(&a.corpus)?;
    let spans = read_tags_file(&a.tags)?;
    let outcome = disambiguate_spans(
        &spans,
        &corpus,
        &load_gazetteer(a.fund_gazetteer.as_deref(), "funding")?,
        &load_gazetteer(a.uni_gazetteer.as_deref(), "university")?,
        &load_overrides(a.overrides.as_deref())?,
        &config,
    )
    .map_err(|e| PipelineError::new(ErrorKind::Validation, e.to_string()))?;
    write_with(&a.out, |w| write_entities_jsonl(w, &outcome.entities))?;
    let c = &outcome.counts;
    eprintln!(
        "{} mentions in, {} dropped as too short, {} aggregated into {} entities",
        c.input_mentions, c.dropped_short, c.aggregated_mentions, c.entities
    );
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), PipelineError> {
    if a.top_k == 0 {
        return Err(PipelineError::config("--top-k must be at least 1"));
    }
    let corpus = read_corpus_file(&a.corpus)?;
    let entities = read_entities_file(&a.entities)?;
    let spans = filter_short_spans(&read_tags_file(&a.tags)?, a.min_chars);
    let guard = load_abbreviations(a.abbreviations.as_deref())?;
    let report = analyze(&corpus, &spans, &entities, &guard, a.seed, a.bootstrap_resamples, a.top_k, a.strict)?;
    let written = write_report(&a.report_dir, &report)?;
    eprintln!("{} files written to {}", written.len(), a.report_dir.display());
    Ok(())
}

fn cmd_run(a: RunArgs) -> Result<(), PipelineError> {
    let manifest = run_pipeline(&a.into_config()?)?;
    let c = &manifest.counts;
    eprintln!(
        "{} records, {} spans, {} entities; report in {}",
        c.ingest.selected,
        c.spans,
        c.disambiguation.entities,
        manifest.config.report_dir.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => cmd_ingest(a),
        Command::Tag(t) => cmd_tag(t),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Disambiguate(a) => cmd_disambiguate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Run(a) => cmd_run(*a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
