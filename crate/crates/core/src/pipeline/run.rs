use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::config::{PipelineConfig, TaggerMode};
use super::report::write_report;
use super::stages::{
    analyze, expand_inputs, filter_short_spans, import_tags, ingest, load_abbreviations, load_domain_map,
    load_gazetteer, load_overrides, sha256_file, tag_baseline, IngestCounts,
};
use super::PipelineError;
use crate::corpus::write_corpus_jsonl;
use crate::disambiguation::{disambiguate_spans, write_entities_jsonl, StageCounts};
use crate::tagging::{write_tags_jsonl, BaselineTagger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunCounts {
    pub ingest: IngestCounts,
    pub records_with_ack_text: usize,
    pub spans: usize,
    pub rejected_spans: usize,
    pub disambiguation: StageCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputFile {
    pub role: String,
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub status: RunStatus,
    pub failed_stage: Option<String>,
    pub errors: Vec<String>,
    pub config: PipelineConfig,
    pub inputs: Vec<InputFile>,
    pub counts: RunCounts,
    pub timings_ms: BTreeMap<String, u128>,
    pub outputs: Vec<PathBuf>,
}

fn write_lines<F>(path: &Path, f: F) -> Result<(), PipelineError>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file = File::create(path).map_err(|e| PipelineError::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).and_then(|_| w.flush()).map_err(|e| PipelineError::io(path, e))
}

struct Run {
    manifest: Manifest,
    clock: Instant,
}

impl Run {
    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.manifest
            .timings_ms
            .insert(stage.to_string(), now.duration_since(self.clock).as_millis());
        self.clock = now;
    }

    fn save(&self, dir: &Path) -> Result<(), PipelineError> {
        let path = dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(&self.manifest).map_err(|e| PipelineError::io(&path, e))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| PipelineError::io(&path, e))
    }
}

/// Ingest, tag, disambiguate and analyse, writing every stage output and a
/// manifest under `config.report_dir`. On failure the manifest is still
/// written, marked incomplete, and the error is returned.
pub fn run_pipeline(config: &PipelineConfig) -> Result<Manifest, PipelineError> {
    config.validate().map_err(|e| e.in_stage("config"))?;
    let dir = config.report_dir.clone();
    fs::create_dir_all(&dir).map_err(|e| PipelineError::io(&dir, e).in_stage("config"))?;
    let mut run = Run {
        manifest: Manifest {
            status: RunStatus::Incomplete,
            failed_stage: None,
            errors: Vec::new(),
            config: config.clone(),
            inputs: Vec::new(),
            counts: RunCounts::default(),
            timings_ms: BTreeMap::new(),
            outputs: Vec::new(),
        },
        clock: Instant::now(),
    };
    match stages(config, &dir, &mut run) {
        Ok(()) => {
            run.manifest.status = RunStatus::Complete;
            run.save(&dir)?;
            Ok(run.manifest)
        }
        Err(e) => {
            run.manifest.failed_stage = e.stage.map(str::to_string);
            run.manifest.errors.extend(e.messages.iter().cloned());
            run.save(&dir)?;
            Err(e)
        }
    }
}

fn stages(config: &PipelineConfig, dir: &Path, run: &mut Run) -> Result<(), PipelineError> {
    let seed = config.seed.unwrap_or(0);

    // ingest
    let files = expand_inputs(&config.corpus).map_err(|e| e.in_stage("ingest"))?;
    for f in &files {
        run.manifest.inputs.push(InputFile {
            role: "corpus".into(),
            path: f.clone(),
            sha256: sha256_file(f)?,
        });
    }
    for (role, p) in config.input_files() {
        run.manifest.inputs.push(InputFile {
            role: role.into(),
            path: p.to_path_buf(),
            sha256: sha256_file(p)?,
        });
    }
    let ingest_out = (|| {
        let map = load_domain_map(config.domain_map.as_deref())?;
        let sample = config.sample_n.map(|n| (n, seed));
        ingest(&files, &map, &config.filter()?, sample, config.strict)
    })()
    .map_err(|e| e.in_stage("ingest"))?;
    let corpus = ingest_out.records;
    run.manifest.counts.ingest = ingest_out.counts;
    run.manifest.counts.records_with_ack_text = corpus.iter().filter(|r| r.has_ack_text()).count();
    run.manifest.errors.extend(ingest_out.errors);
    write_lines(&dir.join("corpus.jsonl"), |w| write_corpus_jsonl(w, &corpus)).map_err(|e| e.in_stage("ingest"))?;
    run.manifest.outputs.push("corpus.jsonl".into());
    run.lap("ingest");

    // tag
    let fund = load_gazetteer(config.fund_gazetteer.as_deref(), "funding").map_err(|e| e.in_stage("tag"))?;
    let uni = load_gazetteer(config.uni_gazetteer.as_deref(), "university").map_err(|e| e.in_stage("tag"))?;
    let spans = match config.tagger {
        TaggerMode::Baseline => {
            let cor = load_gazetteer(config.cor_gazetteer.as_deref(), "corporation").map_err(|e| e.in_stage("tag"))?;
            tag_baseline(&corpus, &BaselineTagger::new(&fund, &uni, &cor))
        }
        TaggerMode::Import => {
            let path = config.tags.as_deref().expect("validated");
            let (spans, rejected) = import_tags(path, &corpus, config.strict).map_err(|e| e.in_stage("tag"))?;
            run.manifest.counts.rejected_spans = rejected.len();
            run.manifest.errors.extend(rejected);
            spans
        }
    };
    run.manifest.counts.spans = spans.len();
    write_lines(&dir.join("tags.jsonl"), |w| write_tags_jsonl(w, &spans)).map_err(|e| e.in_stage("tag"))?;
    run.manifest.outputs.push("tags.jsonl".into());
    run.lap("tag");

    // disambiguate
    let overrides = load_overrides(config.overrides.as_deref()).map_err(|e| e.in_stage("disambiguate"))?;
    let outcome = disambiguate_spans(&spans, &corpus, &fund, &uni, &overrides, &config.disambiguation())
        .map_err(|e| PipelineError::new(super::ErrorKind::Validation, e.to_string()).in_stage("disambiguate"))?;
    run.manifest.counts.disambiguation = outcome.counts.clone();
    write_lines(&dir.join("entities.jsonl"), |w| write_entities_jsonl(w, &outcome.entities))
        .map_err(|e| e.in_stage("disambiguate"))?;
    run.manifest.outputs.push("entities.jsonl".into());
    run.lap("disambiguate");

    // analyze
    let guard = load_abbreviations(config.abbreviations.as_deref()).map_err(|e| e.in_stage("analyze"))?;
    let kept = filter_short_spans(&spans, config.min_chars);
    let report = analyze(
        &corpus,
        &kept,
        &outcome.entities,
        &guard,
        seed,
        config.bootstrap_resamples,
        config.top_k,
        config.strict,
    )
    .map_err(|e| e.in_stage("analyze"))?;
    let written = write_report(dir, &report).map_err(|e| e.in_stage("analyze"))?;
    run.manifest.outputs.extend(written);
    run.lap("analyze");
    Ok(())
}
