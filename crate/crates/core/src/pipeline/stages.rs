use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::report::{association_test, AssociationTest};
use super::{ErrorKind, PipelineError};
use crate::corpus::{
    coverage_stats, filter_records, map_disciplines, parse_reader, read_corpus_jsonl, sample_per_domain,
    CorpusFilter, CorpusRecord, CoverageRow, DomainMap, Domain,
};
use crate::disambiguation::{read_entities_jsonl, CanonicalEntity, OverrideSet, SHORT_ENTITY_LABELS};
use crate::gazetteer::Gazetteer;
use crate::stats::{
    anova_by_domain, entity_domain_table, entity_label_table, frequency_by_type_domain, length_stats,
    mean_std_all_papers, mean_std_per_paper, rank_frequency, record_variables, top_k, yearly_trends,
    correlation_matrix, ContingencyTable, CorrelationMatrix, GroupSummary, LengthSummary, RankedEntity,
    TrendMetric, TrendPoint, VariableAnova,
};
use crate::tagging::{import_external_tags, read_tags_jsonl, BaselineTagger, EntityLabel, EntitySpan};
use crate::text::AbbreviationGuard;

fn open(path: &Path) -> Result<BufReader<File>, PipelineError> {
    File::open(path).map(BufReader::new).map_err(|e| PipelineError::io(path, e))
}

pub fn sha256_file(path: &Path) -> Result<String, PipelineError> {
    let mut f = open(path)?;
    let mut h = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = f.read(&mut buf).map_err(|e| PipelineError::io(path, e))?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

/// Expand glob patterns into a sorted, de-duplicated file list. A pattern
/// without glob characters must name an existing file.
pub fn expand_inputs(patterns: &[String]) -> Result<Vec<PathBuf>, PipelineError> {
    let mut out = Vec::new();
    for p in patterns {
        let paths = glob::glob(p).map_err(|e| PipelineError::config(format!("bad pattern {p:?}: {e}")))?;
        let mut matched = 0;
        for entry in paths {
            let path = entry.map_err(|e| PipelineError::io(e.path(), e.error()))?;
            if path.is_file() {
                out.push(path);
                matched += 1;
            }
        }
        if matched == 0 {
            return Err(PipelineError::config(format!("corpus pattern {p:?} matches no files")));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn load_gazetteer(path: Option<&Path>, what: &str) -> Result<Gazetteer, PipelineError> {
    let Some(path) = path else {
        log::warn!("no {what} gazetteer configured; using an empty one");
        return Ok(Gazetteer::default());
    };
    if !path.is_file() {
        return Err(PipelineError::config(format!("{what} gazetteer {} does not exist", path.display())));
    }
    let g = Gazetteer::from_path(path).map_err(|e| PipelineError::new(ErrorKind::Parse, e.to_string()))?;
    if !g.dropped_abbreviations().is_empty() {
        log::info!(
            "{what} gazetteer: ambiguous abbreviations ignored: {}",
            g.dropped_abbreviations().join(", ")
        );
    }
    Ok(g)
}

pub fn load_overrides(path: Option<&Path>) -> Result<OverrideSet, PipelineError> {
    match path {
        None => Ok(OverrideSet::default()),
        Some(p) if !p.is_file() => Err(PipelineError::config(format!("overrides {} does not exist", p.display()))),
        Some(p) => OverrideSet::from_path(p).map_err(|e| PipelineError::new(ErrorKind::Parse, e.to_string())),
    }
}

pub fn load_abbreviations(path: Option<&Path>) -> Result<AbbreviationGuard, PipelineError> {
    match path {
        None => Ok(AbbreviationGuard::default()),
        Some(p) => AbbreviationGuard::from_path(p).map_err(|e| PipelineError::config(format!("{}: {e}", p.display()))),
    }
}

pub fn load_domain_map(path: Option<&Path>) -> Result<DomainMap, PipelineError> {
    match path {
        None => Ok(DomainMap::builtin()),
        Some(p) => DomainMap::from_path(p).map_err(|e| PipelineError::new(ErrorKind::Parse, e.to_string())),
    }
}

pub fn read_corpus_file(path: &Path) -> Result<Vec<CorpusRecord>, PipelineError> {
    read_corpus_jsonl(open(path)?)
        .map_err(|e| PipelineError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))
}

pub fn read_entities_file(path: &Path) -> Result<Vec<CanonicalEntity>, PipelineError> {
    read_entities_jsonl(open(path)?)
        .map_err(|e| PipelineError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))
}

/// Read spans without checking them against a corpus.
pub fn read_tags_file(path: &Path) -> Result<Vec<EntitySpan>, PipelineError> {
    read_tags_jsonl(open(path)?).map_err(|e| PipelineError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestCounts {
    pub files: usize,
    pub parsed: usize,
    pub rejected: usize,
    pub after_filter: usize,
    pub selected: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IngestOutcome {
    pub records: Vec<CorpusRecord>,
    pub errors: Vec<String>,
    pub counts: IngestCounts,
    /// Coverage of the filtered corpus, before sampling.
    pub coverage: Vec<CoverageRow>,
}

/// Parse every file, assign domains, filter, and optionally sample
/// `(n, seed)` records per domain. Records that fail to parse, and later
/// duplicates of an id already read from another file, are skipped and
/// reported; with `strict` they fail the stage.
pub fn ingest(
    files: &[PathBuf],
    map: &DomainMap,
    filter: &CorpusFilter,
    sample: Option<(usize, u64)>,
    strict: bool,
) -> Result<IngestOutcome, PipelineError> {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut seen = HashSet::new();
    for f in files {
        let outcome = parse_reader(open(f)?);
        errors.extend(outcome.errors.iter().map(|e| format!("{}: {e}", f.display())));
        for r in outcome.records {
            if seen.insert(r.record_id.clone()) {
                records.push(r);
            } else {
                errors.push(format!("{}: duplicate record id {:?} (already read)", f.display(), r.record_id));
            }
        }
    }
    if strict && !errors.is_empty() {
        return Err(PipelineError::many(ErrorKind::Parse, errors));
    }
    for e in &errors {
        log::warn!("skipped: {e}");
    }
    let parsed = records.len();
    let records = filter_records(map_disciplines(records, map), filter);
    let after_filter = records.len();
    let coverage = coverage_stats(&records);
    let records = match sample {
        Some((n, seed)) => sample_per_domain(records, n, seed).map_err(|e| PipelineError::config(e.to_string()))?,
        None => records,
    };
    Ok(IngestOutcome {
        counts: IngestCounts {
            files: files.len(),
            parsed,
            rejected: errors.len(),
            after_filter,
            selected: records.len(),
        },
        records,
        errors,
        coverage,
    })
}

/// Baseline spans for every record with an acknowledgement text, in corpus
/// order.
pub fn tag_baseline(corpus: &[CorpusRecord], tagger: &BaselineTagger) -> Vec<EntitySpan> {
    corpus
        .par_iter()
        .filter_map(|r| tagger.tag(r).ok())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Validate an external tag file against the corpus. Rejected lines are
/// returned as messages, or fail the stage under `strict`.
pub fn import_tags(
    path: &Path,
    corpus: &[CorpusRecord],
    strict: bool,
) -> Result<(Vec<EntitySpan>, Vec<String>), PipelineError> {
    let outcome = import_external_tags(open(path)?, corpus);
    let errors: Vec<String> = outcome.errors.iter().map(|e| format!("{}: {e}", path.display())).collect();
    if strict && !errors.is_empty() {
        return Err(PipelineError::many(ErrorKind::Validation, errors));
    }
    for e in &errors {
        log::warn!("rejected: {e}");
    }
    Ok((outcome.spans, errors))
}

/// Spans that survive the minimum-length rule applied during disambiguation.
pub fn filter_short_spans(spans: &[EntitySpan], min_chars: usize) -> Vec<EntitySpan> {
    spans
        .iter()
        .filter(|s| !SHORT_ENTITY_LABELS.contains(&s.label) || s.surface.chars().count() >= min_chars)
        .cloned()
        .collect()
}

/// Everything the report bundle contains, in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub coverage: Vec<CoverageRow>,
    pub frequency: ContingencyTable,
    pub per_paper: Vec<GroupSummary>,
    pub all_papers: Vec<GroupSummary>,
    pub top: Vec<(Domain, EntityLabel, Vec<RankedEntity>)>,
    pub lengths: Vec<LengthSummary>,
    pub associations: Vec<AssociationTest>,
    pub pearson: CorrelationMatrix,
    pub anova: Vec<VariableAnova>,
    pub rank_frequency: Vec<(Domain, EntityLabel, Vec<(usize, u64)>)>,
    pub trends: Vec<TrendPoint>,
}

/// Run every analysis. `spans` should already have passed
/// [`filter_short_spans`]. Untestable contingency tables are recorded in the
/// report; with `strict` they fail the stage.
#[allow(clippy::too_many_arguments)]
pub fn analyze(
    corpus: &[CorpusRecord],
    spans: &[EntitySpan],
    entities: &[CanonicalEntity],
    guard: &AbbreviationGuard,
    seed: u64,
    resamples: usize,
    k: usize,
    strict: bool,
) -> Result<AnalysisReport, PipelineError> {
    if !corpus.iter().any(CorpusRecord::has_ack_text) {
        return Err(PipelineError::new(
            ErrorKind::Statistics,
            "no record has an acknowledgement text; nothing to analyse",
        ));
    }
    let frequency = frequency_by_type_domain(entities);
    let associations = vec![
        association_test("entity type - scientific field", &frequency),
        association_test("entity - scientific field", &entity_domain_table(entities)),
        association_test("entity - entity type", &entity_label_table(entities)),
    ];
    let failed: Vec<String> = associations
        .iter()
        .filter_map(|a| a.chi_square.as_ref().err().map(|e| format!("{}: {e}", a.variables)))
        .collect();
    if strict && !failed.is_empty() {
        return Err(PipelineError::many(ErrorKind::Statistics, failed));
    }
    for f in &failed {
        log::warn!("association test skipped: {f}");
    }

    let mut top = Vec::new();
    let mut ranks = Vec::new();
    for d in Domain::ALL {
        for l in EntityLabel::ALL {
            top.push((d, l, top_k(entities, l, d, k).map_err(|e| PipelineError::config(e.to_string()))?));
            ranks.push((d, l, rank_frequency(entities, l, d)));
        }
    }
    let vars = record_variables(corpus, spans, guard);
    let pearson = correlation_matrix(&vars.columns, true)
        .map_err(|e| PipelineError::new(ErrorKind::Statistics, e.to_string()))?;
    let mut trends = yearly_trends(corpus, guard, TrendMetric::Words, resamples, seed);
    trends.extend(yearly_trends(corpus, guard, TrendMetric::Sentences, resamples, seed));

    Ok(AnalysisReport {
        coverage: coverage_stats(corpus),
        frequency,
        per_paper: mean_std_per_paper(spans, corpus),
        all_papers: mean_std_all_papers(spans, corpus),
        top,
        lengths: length_stats(corpus, guard),
        associations,
        pearson,
        anova: anova_by_domain(&vars),
        rank_frequency: ranks,
        trends,
    })
}
