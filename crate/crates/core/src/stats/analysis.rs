//! Corpus-level analyses over records, spans and canonical entities.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::contingency::ContingencyTable;
use super::correlation::{correlation_matrix, one_way_anova, AnovaResult, CorrelationMatrix};
use super::descriptive::{mean, median, median_sorted, percentile_sorted, sample_std};
use super::StatsError;
use crate::corpus::{CorpusRecord, Domain};
use crate::disambiguation::CanonicalEntity;
use crate::seed::stage_rng;
use crate::tagging::{EntityLabel, EntitySpan};
use crate::text::{text_length, AbbreviationGuard, TextLength};

/// Label by domain mention counts, rows in label order, columns in domain
/// order. Mentions from records without a domain are left out.
pub fn frequency_by_type_domain(entities: &[CanonicalEntity]) -> ContingencyTable {
    let mut counts = vec![vec![0u64; Domain::ALL.len()]; EntityLabel::ALL.len()];
    for e in entities {
        let i = EntityLabel::ALL.iter().position(|l| *l == e.label).expect("known label");
        for (j, d) in Domain::ALL.iter().enumerate() {
            counts[i][j] += e.count_in(*d);
        }
    }
    ContingencyTable::new(
        EntityLabel::ALL.iter().map(|l| l.as_str().to_string()).collect(),
        Domain::ALL.iter().map(|d| d.as_str().to_string()).collect(),
        counts,
    )
    .expect("fixed shape")
}

/// Canonical entity string by domain. Entities sharing a string under
/// different labels are one row.
pub fn entity_domain_table(entities: &[CanonicalEntity]) -> ContingencyTable {
    ContingencyTable::from_triples(entities.iter().flat_map(|e| {
        Domain::ALL
            .iter()
            .map(move |d| (e.canonical.as_str(), d.as_str(), e.count_in(*d)))
            .filter(|t| t.2 > 0)
    }))
}

/// Canonical entity string by label.
pub fn entity_label_table(entities: &[CanonicalEntity]) -> ContingencyTable {
    ContingencyTable::from_triples(
        entities
            .iter()
            .map(|e| (e.canonical.as_str(), e.label.as_str(), e.mention_count)),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub domain: Domain,
    pub label: EntityLabel,
    pub n: usize,
    pub mean: f64,
    pub std: f64,
}

/// Per-record span counts by label, for records that have a domain.
fn counts_per_record<'a>(
    spans: &[EntitySpan],
    corpus: &'a [CorpusRecord],
) -> HashMap<&'a str, [u64; 6]> {
    let known: HashMap<&str, &CorpusRecord> = corpus.iter().map(|r| (r.record_id.as_str(), r)).collect();
    let mut out: HashMap<&str, [u64; 6]> = HashMap::new();
    for s in spans {
        match known.get(s.record_id.as_str()) {
            Some(r) => {
                let i = EntityLabel::ALL.iter().position(|l| *l == s.label).expect("known label");
                out.entry(r.record_id.as_str()).or_insert([0; 6])[i] += 1;
            }
            None => log::debug!("span for unknown record {} ignored", s.record_id),
        }
    }
    out
}

fn summarize(domain: Domain, label: EntityLabel, values: &[f64]) -> Option<GroupSummary> {
    Some(GroupSummary {
        domain,
        label,
        n: values.len(),
        mean: mean(values)?,
        std: sample_std(values)?,
    })
}

/// Mean and sample std of per-paper span counts for every (domain, label),
/// over the papers of the domain with at least one span of the label. Groups
/// with no such paper are omitted.
pub fn mean_std_per_paper(spans: &[EntitySpan], corpus: &[CorpusRecord]) -> Vec<GroupSummary> {
    let per_record = counts_per_record(spans, corpus);
    let groups: Vec<(Domain, usize)> = Domain::ALL
        .iter()
        .flat_map(|d| (0..EntityLabel::ALL.len()).map(move |i| (*d, i)))
        .collect();
    groups
        .par_iter()
        .filter_map(|&(d, i)| {
            let values: Vec<f64> = corpus
                .iter()
                .filter(|r| r.domain == Some(d))
                .filter_map(|r| per_record.get(r.record_id.as_str()))
                .map(|c| c[i])
                .filter(|&c| c > 0)
                .map(|c| c as f64)
                .collect();
            summarize(d, EntityLabel::ALL[i], &values)
        })
        .collect()
}

/// As [`mean_std_per_paper`] but over every paper of the domain that has an
/// acknowledgement text, counting papers without a span of the label as 0.
pub fn mean_std_all_papers(spans: &[EntitySpan], corpus: &[CorpusRecord]) -> Vec<GroupSummary> {
    let per_record = counts_per_record(spans, corpus);
    let mut out = Vec::new();
    for d in Domain::ALL {
        let papers: Vec<&CorpusRecord> =
            corpus.iter().filter(|r| r.domain == Some(d) && r.has_ack_text()).collect();
        for (i, label) in EntityLabel::ALL.iter().enumerate() {
            let values: Vec<f64> = papers
                .iter()
                .map(|r| per_record.get(r.record_id.as_str()).map_or(0, |c| c[i]) as f64)
                .collect();
            out.extend(summarize(d, *label, &values));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedEntity {
    pub rank: usize,
    pub canonical: String,
    pub count: u64,
}

fn ranked(entities: &[CanonicalEntity], label: EntityLabel, domain: Domain) -> Vec<RankedEntity> {
    let mut v: Vec<(&str, u64)> = entities
        .iter()
        .filter(|e| e.label == label)
        .map(|e| (e.canonical.as_str(), e.count_in(domain)))
        .filter(|(_, c)| *c > 0)
        .collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    v.into_iter()
        .enumerate()
        .map(|(i, (s, c))| RankedEntity { rank: i + 1, canonical: s.to_string(), count: c })
        .collect()
}

/// The `k` most mentioned entities of a label within a domain; ties are broken
/// by the canonical form in ascending order.
pub fn top_k(
    entities: &[CanonicalEntity],
    label: EntityLabel,
    domain: Domain,
    k: usize,
) -> Result<Vec<RankedEntity>, StatsError> {
    if k == 0 {
        return Err(StatsError::InvalidK);
    }
    let mut v = ranked(entities, label, domain);
    v.truncate(k);
    Ok(v)
}

/// `(rank, count)` pairs, counts descending, ranks from 1.
pub fn rank_frequency(entities: &[CanonicalEntity], label: EntityLabel, domain: Domain) -> Vec<(usize, u64)> {
    ranked(entities, label, domain).into_iter().map(|r| (r.rank, r.count)).collect()
}

/// Sentence and word counts for every record with a non-blank
/// acknowledgement text, in corpus order.
pub fn record_lengths<'a>(
    corpus: &'a [CorpusRecord],
    guard: &AbbreviationGuard,
) -> Vec<(&'a CorpusRecord, TextLength)> {
    corpus
        .par_iter()
        .filter_map(|r| {
            let text = r.ack_text.as_deref()?;
            text_length(text, guard).ok().map(|l| (r, l))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthSummary {
    pub domain: Domain,
    pub records: usize,
    pub median_sentences: Option<f64>,
    pub median_words: Option<f64>,
}

pub fn length_stats(corpus: &[CorpusRecord], guard: &AbbreviationGuard) -> Vec<LengthSummary> {
    let lengths = record_lengths(corpus, guard);
    Domain::ALL
        .iter()
        .map(|&d| {
            let (s, w): (Vec<f64>, Vec<f64>) = lengths
                .iter()
                .filter(|(r, _)| r.domain == Some(d))
                .map(|(_, l)| (l.sentence_count as f64, l.word_count as f64))
                .unzip();
            LengthSummary {
                domain: d,
                records: s.len(),
                median_sentences: median(&s),
                median_words: median(&w),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrendMetric {
    Words,
    Sentences,
}

impl TrendMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            TrendMetric::Words => "words",
            TrendMetric::Sentences => "sentences",
        }
    }

    fn of(self, l: &TextLength) -> f64 {
        match self {
            TrendMetric::Words => l.word_count as f64,
            TrendMetric::Sentences => l.sentence_count as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendPoint {
    pub metric: TrendMetric,
    pub domain: Domain,
    pub year: i32,
    pub n: usize,
    pub median: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Median of `values` with a 95% percentile-bootstrap interval. Fewer than
/// two values give a degenerate interval at the median. The interval is
/// widened if needed so that it always contains the median.
pub fn bootstrap_median_ci<R: Rng>(values: &[f64], resamples: usize, rng: &mut R) -> Option<(f64, f64, f64)> {
    let m = median(values)?;
    if values.len() < 2 || resamples == 0 {
        return Some((m, m, m));
    }
    let n = values.len();
    let mut buf = vec![0.0; n];
    let mut medians = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        for slot in buf.iter_mut() {
            *slot = values[rng.random_range(0..n)];
        }
        buf.sort_by(f64::total_cmp);
        medians.push(median_sorted(&buf));
    }
    medians.sort_by(f64::total_cmp);
    let lo = percentile_sorted(&medians, 0.025).min(m);
    let hi = percentile_sorted(&medians, 0.975).max(m);
    Some((m, lo, hi))
}

/// Per (domain, year) median of a length metric with a bootstrap interval.
/// Each group draws from its own stream derived from `seed`, so the result
/// does not depend on which other groups exist.
pub fn yearly_trends(
    corpus: &[CorpusRecord],
    guard: &AbbreviationGuard,
    metric: TrendMetric,
    resamples: usize,
    seed: u64,
) -> Vec<TrendPoint> {
    let mut groups: BTreeMap<(Domain, i32), Vec<f64>> = BTreeMap::new();
    for (r, l) in record_lengths(corpus, guard) {
        if let Some(d) = r.domain {
            groups.entry((d, r.year)).or_default().push(metric.of(&l));
        }
    }
    let groups: Vec<_> = groups.into_iter().collect();
    groups
        .par_iter()
        .map(|((d, y), values)| {
            let stage = format!("bootstrap/{}/{}/{}", metric.as_str(), d.as_str(), y);
            let mut rng = stage_rng(seed, &stage);
            let (median, ci_low, ci_high) =
                bootstrap_median_ci(values, resamples, &mut rng).expect("non-empty group");
            TrendPoint { metric, domain: *d, year: *y, n: values.len(), median, ci_low, ci_high }
        })
        .collect()
}

/// Per-record variables for correlation and variance analysis, over records
/// with a non-blank acknowledgement text.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordVariables {
    pub record_ids: Vec<String>,
    pub domains: Vec<Option<Domain>>,
    pub columns: Vec<(String, Vec<f64>)>,
}

pub const CITATION_COUNT: &str = "citation_count";
pub const WORD_COUNT: &str = "word_count";
pub const SENTENCE_COUNT: &str = "sentence_count";

pub fn record_variables(
    corpus: &[CorpusRecord],
    spans: &[EntitySpan],
    guard: &AbbreviationGuard,
) -> RecordVariables {
    let lengths = record_lengths(corpus, guard);
    let per_record = counts_per_record(spans, corpus);
    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();
    columns.push((CITATION_COUNT.into(), lengths.iter().map(|(r, _)| r.citation_count as f64).collect()));
    for (i, label) in EntityLabel::ALL.iter().enumerate() {
        let v = lengths
            .iter()
            .map(|(r, _)| per_record.get(r.record_id.as_str()).map_or(0, |c| c[i]) as f64)
            .collect();
        columns.push((label.as_str().into(), v));
    }
    columns.push((WORD_COUNT.into(), lengths.iter().map(|(_, l)| l.word_count as f64).collect()));
    columns.push((SENTENCE_COUNT.into(), lengths.iter().map(|(_, l)| l.sentence_count as f64).collect()));
    RecordVariables {
        record_ids: lengths.iter().map(|(r, _)| r.record_id.clone()).collect(),
        domains: lengths.iter().map(|(r, _)| r.domain).collect(),
        columns,
    }
}

/// Correlation matrix of the per-record variables on z-scored data.
pub fn pearson_matrix(
    corpus: &[CorpusRecord],
    spans: &[EntitySpan],
    guard: &AbbreviationGuard,
) -> Result<CorrelationMatrix, StatsError> {
    correlation_matrix(&record_variables(corpus, spans, guard).columns, true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariableAnova {
    pub variable: String,
    pub groups: Vec<Domain>,
    pub result: Result<AnovaResult, String>,
}

/// One-way ANOVA of every per-record variable across domains. Domains with no
/// records are left out of the design.
pub fn anova_by_domain(vars: &RecordVariables) -> Vec<VariableAnova> {
    let present: Vec<Domain> = Domain::ALL
        .into_iter()
        .filter(|d| vars.domains.contains(&Some(*d)))
        .collect();
    vars.columns
        .iter()
        .map(|(name, values)| {
            let groups: Vec<Vec<f64>> = present
                .iter()
                .map(|d| {
                    values
                        .iter()
                        .zip(&vars.domains)
                        .filter(|(_, rd)| **rd == Some(*d))
                        .map(|(v, _)| *v)
                        .collect()
                })
                .collect();
            VariableAnova {
                variable: name.clone(),
                groups: present.clone(),
                result: one_way_anova(&groups).map_err(|e| e.to_string()),
            }
        })
        .collect()
}
