use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::canonicalize::canonicalize_against_gazetteer;
use super::cluster::{cluster_by_ratio, cluster_case_insensitive, cluster_corporations, Cluster};
use super::overrides::{apply_overrides, OverrideSet};
use super::Mention;
use crate::corpus::{CorpusRecord, Domain};
use crate::gazetteer::Gazetteer;
use crate::tagging::{EntityLabel, EntitySpan};

/// Key used in `per_domain_counts` for records without a domain.
pub const UNASSIGNED: &str = "unassigned";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisambiguationConfig {
    pub name_threshold: u8,
    pub abbrev_threshold: u8,
    pub cor_partial_threshold: u8,
    pub misspell_threshold: u8,
    pub min_chars: usize,
}

impl Default for DisambiguationConfig {
    fn default() -> Self {
        DisambiguationConfig {
            name_threshold: 93,
            abbrev_threshold: 99,
            cor_partial_threshold: 96,
            misspell_threshold: 90,
            min_chars: 4,
        }
    }
}

/// Labels subject to the minimum-length rule.
pub const SHORT_ENTITY_LABELS: [EntityLabel; 2] = [EntityLabel::Ind, EntityLabel::Grnb];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalEntity {
    pub canonical: String,
    pub label: EntityLabel,
    pub members: BTreeSet<String>,
    pub mention_count: u64,
    pub per_domain_counts: BTreeMap<String, u64>,
}

impl CanonicalEntity {
    pub fn count_in(&self, domain: Domain) -> u64 {
        self.per_domain_counts.get(domain.as_str()).copied().unwrap_or(0)
    }

    /// One mention per counted occurrence, with the canonical form as surface.
    pub fn to_mentions(&self) -> Vec<Mention> {
        let mut out = Vec::with_capacity(self.mention_count as usize);
        for (d, &n) in &self.per_domain_counts {
            let domain = d.parse::<Domain>().ok();
            out.extend((0..n).map(|_| Mention::new(self.canonical.clone(), self.label, domain)));
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub input_mentions: usize,
    pub gazetteer_rewrites: usize,
    pub corporation_rewrites: usize,
    pub misspelling_rewrites: usize,
    pub dropped_short: usize,
    pub relabelled: usize,
    pub aggregated_mentions: usize,
    pub entities: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisambiguationOutcome {
    pub entities: Vec<CanonicalEntity>,
    pub counts: StageCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DisambiguationError {
    #[error("span {start}..{end} refers to unknown record {record_id:?}")]
    UnknownRecord { record_id: String, start: usize, end: usize },
}

fn surface_counts<'a>(mentions: impl Iterator<Item = &'a Mention>) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for m in mentions {
        *counts.entry(m.surface.clone()).or_insert(0) += 1;
    }
    counts
}

fn rewrite(mentions: &mut [Mention], label: EntityLabel, clusters: &[Cluster]) -> usize {
    let map: HashMap<&str, &str> = clusters
        .iter()
        .flat_map(|c| c.members.iter().map(move |m| (m.as_str(), c.canonical.as_str())))
        .collect();
    let mut n = 0;
    for m in mentions.iter_mut().filter(|m| m.label == label) {
        if let Some(&canon) = map.get(m.surface.as_str()) {
            if canon != m.surface {
                m.surface = canon.to_string();
                n += 1;
            }
        }
    }
    n
}

/// Merge variants within each label: IND surfaces that differ only in case,
/// every other label by `similarity_ratio > threshold`. Returns the clusters
/// per label after rewriting the mentions to their cluster's canonical form.
pub fn merge_misspellings(mentions: &mut [Mention], threshold: u8) -> (BTreeMap<EntityLabel, Vec<Cluster>>, usize) {
    let mut all = BTreeMap::new();
    let mut changed = 0;
    for label in EntityLabel::ALL {
        let counts = surface_counts(mentions.iter().filter(|m| m.label == label));
        if counts.is_empty() {
            continue;
        }
        let clusters = if label == EntityLabel::Ind {
            cluster_case_insensitive(&counts)
        } else {
            cluster_by_ratio(&counts, threshold)
        };
        changed += rewrite(mentions, label, &clusters);
        all.insert(label, clusters);
    }
    (all, changed)
}

/// Remove mentions of `labels` whose surface has fewer than `min_chars`
/// characters, spaces included.
pub fn drop_short_entities(mentions: Vec<Mention>, labels: &[EntityLabel], min_chars: usize) -> (Vec<Mention>, usize) {
    let before = mentions.len();
    let kept: Vec<Mention> = mentions
        .into_iter()
        .filter(|m| !labels.contains(&m.label) || m.surface.chars().count() >= min_chars)
        .collect();
    let dropped = before - kept.len();
    (kept, dropped)
}

/// Group mentions by final `(surface, label)`. Output is sorted by label,
/// then descending count, then canonical form.
pub fn aggregate(mentions: &[Mention]) -> Vec<CanonicalEntity> {
    let mut groups: BTreeMap<(EntityLabel, &str), CanonicalEntity> = BTreeMap::new();
    for m in mentions {
        let e = groups.entry((m.label, m.surface.as_str())).or_insert_with(|| CanonicalEntity {
            canonical: m.surface.clone(),
            label: m.label,
            members: BTreeSet::new(),
            mention_count: 0,
            per_domain_counts: BTreeMap::new(),
        });
        e.members.insert(m.original.clone());
        e.mention_count += 1;
        let key = m.domain.map_or(UNASSIGNED, Domain::as_str);
        *e.per_domain_counts.entry(key.to_string()).or_insert(0) += 1;
    }
    let mut out: Vec<CanonicalEntity> = groups.into_values().collect();
    out.sort_by(|a, b| {
        a.label
            .cmp(&b.label)
            .then(b.mention_count.cmp(&a.mention_count))
            .then_with(|| a.canonical.cmp(&b.canonical))
    });
    out
}

/// Run every stage in order: gazetteer rewriting (FUND and MISC against the
/// funder list, UNI against the university list), corporation clustering,
/// misspelling merging, short-entity removal, overrides, aggregation.
pub fn disambiguate(
    mut mentions: Vec<Mention>,
    fund_gazetteer: &Gazetteer,
    uni_gazetteer: &Gazetteer,
    overrides: &OverrideSet,
    config: &DisambiguationConfig,
) -> DisambiguationOutcome {
    let mut counts = StageCounts {
        input_mentions: mentions.len(),
        ..Default::default()
    };

    counts.gazetteer_rewrites = canonicalize_against_gazetteer(
        &mut mentions,
        &[EntityLabel::Fund, EntityLabel::Misc],
        fund_gazetteer,
        config.name_threshold,
        config.abbrev_threshold,
    ) + canonicalize_against_gazetteer(
        &mut mentions,
        &[EntityLabel::Uni],
        uni_gazetteer,
        config.name_threshold,
        config.abbrev_threshold,
    );

    let cor = surface_counts(mentions.iter().filter(|m| m.label == EntityLabel::Cor));
    let clusters = cluster_corporations(&cor, config.cor_partial_threshold);
    counts.corporation_rewrites = rewrite(&mut mentions, EntityLabel::Cor, &clusters);

    let (_, changed) = merge_misspellings(&mut mentions, config.misspell_threshold);
    counts.misspelling_rewrites = changed;

    let (mut mentions, dropped) = drop_short_entities(mentions, &SHORT_ENTITY_LABELS, config.min_chars);
    counts.dropped_short = dropped;

    counts.relabelled = apply_overrides(&mut mentions, overrides);

    let entities = aggregate(&mentions);
    counts.aggregated_mentions = entities.iter().map(|e| e.mention_count as usize).sum();
    counts.entities = entities.len();
    DisambiguationOutcome { entities, counts }
}

/// Build mentions from validated spans, taking each span's domain from its
/// record, then run [`disambiguate`].
pub fn disambiguate_spans(
    spans: &[EntitySpan],
    corpus: &[CorpusRecord],
    fund_gazetteer: &Gazetteer,
    uni_gazetteer: &Gazetteer,
    overrides: &OverrideSet,
    config: &DisambiguationConfig,
) -> Result<DisambiguationOutcome, DisambiguationError> {
    let domains: HashMap<&str, Option<Domain>> =
        corpus.iter().map(|r| (r.record_id.as_str(), r.domain)).collect();
    let mentions = spans
        .iter()
        .map(|s| {
            let domain = domains
                .get(s.record_id.as_str())
                .ok_or_else(|| DisambiguationError::UnknownRecord {
                    record_id: s.record_id.clone(),
                    start: s.start,
                    end: s.end,
                })?;
            Ok(Mention::new(s.surface.clone(), s.label, *domain))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(disambiguate(mentions, fund_gazetteer, uni_gazetteer, overrides, config))
}

pub fn write_entities_jsonl<W: Write>(mut w: W, entities: &[CanonicalEntity]) -> std::io::Result<()> {
    for e in entities {
        serde_json::to_writer(&mut w, e)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_entities_jsonl<R: BufRead>(reader: R) -> Result<Vec<CanonicalEntity>, crate::corpus::JsonlError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line)
                .map_err(|source| crate::corpus::JsonlError::Json { line: i + 1, source })?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gazetteer::GazetteerEntry;
    use proptest::prelude::*;

    fn gaz(rows: &[(&str, &str, &str)]) -> Gazetteer {
        Gazetteer::from_entries(
            rows.iter()
                .map(|(t, a, f)| GazetteerEntry {
                    text: t.to_string(),
                    abbreviation: a.to_string(),
                    disambiguated_form: f.to_string(),
                })
                .collect(),
        )
    }

    fn fund() -> Gazetteer {
        gaz(&[("National Science Foundation", "NSF", "National Science Foundation (NSF)")])
    }

    fn run(mentions: Vec<Mention>) -> DisambiguationOutcome {
        disambiguate(mentions, &fund(), &Gazetteer::default(), &OverrideSet::default(), &DisambiguationConfig::default())
    }

    #[test]
    fn example_triple_merges() {
        let d = Some(Domain::Economics);
        let out = run(vec![
            Mention::new("National Science Foundation", EntityLabel::Fund, d),
            Mention::new("NSF", EntityLabel::Fund, d),
            Mention::new("National Science Foundation (NSF)", EntityLabel::Fund, d),
        ]);
        assert_eq!(out.entities.len(), 1);
        let e = &out.entities[0];
        assert_eq!(e.canonical, "National Science Foundation (NSF)");
        assert_eq!(e.mention_count, 3);
        assert_eq!(e.members.len(), 3);
        assert_eq!(e.per_domain_counts["economics"], 3);
    }

    #[test]
    fn lone_initial_is_dropped() {
        let out = run(vec![Mention::new("J.", EntityLabel::Ind, None)]);
        assert!(out.entities.is_empty());
        assert_eq!(out.counts.dropped_short, 1);
    }

    #[test]
    fn short_rule_examples() {
        let ms = vec![
            Mention::new("J.", EntityLabel::Ind, None),
            Mention::new("Drs.", EntityLabel::Ind, None),
            Mention::new("NSF", EntityLabel::Fund, None),
            Mention::new("123", EntityLabel::Grnb, None),
        ];
        let (kept, dropped) = drop_short_entities(ms, &SHORT_ENTITY_LABELS, 4);
        assert_eq!(dropped, 2);
        let surfaces: Vec<_> = kept.iter().map(|m| m.surface.as_str()).collect();
        assert_eq!(surfaces, vec!["Drs.", "NSF"]);
    }

    #[test]
    fn person_case_variants_only() {
        let mut ms = vec![
            Mention::new("John Doe", EntityLabel::Ind, None),
            Mention::new("john doe", EntityLabel::Ind, None),
            Mention::new("Jon Doe", EntityLabel::Ind, None),
        ];
        let (clusters, _) = merge_misspellings(&mut ms, 90);
        assert_eq!(clusters[&EntityLabel::Ind].len(), 2);
        assert_eq!(ms[0].surface, ms[1].surface);
        assert_eq!(ms[2].surface, "Jon Doe");
    }

    #[test]
    fn misspelled_funders() {
        // the two variants differ by indel distance 13 over 87 characters:
        // ratio 85, so they are not linked directly; the first one is still
        // within 96 of the correctly spelled name and joins its cluster
        let a = "National Nature Science Foundation of China";
        let b = "Natural National Science Foundation of China";
        assert_eq!(crate::similarity::similarity_ratio(a, b), 85);
        let c = "National Natural Science Fundation of China";
        let d = "National Natural Science Foundation of China";
        let mut ms = vec![
            Mention::new(a, EntityLabel::Fund, None),
            Mention::new(b, EntityLabel::Fund, None),
            Mention::new(c, EntityLabel::Fund, None),
            Mention::new(d, EntityLabel::Fund, None),
            Mention::new(d, EntityLabel::Fund, None),
        ];
        merge_misspellings(&mut ms, 90);
        let surfaces: Vec<_> = ms.iter().map(|m| m.surface.as_str()).collect();
        assert_eq!(surfaces, vec![d, b, d, d, d]);
    }

    #[test]
    fn labels_never_cross() {
        let out = run(vec![
            Mention::new("Google Inc.", EntityLabel::Cor, None),
            Mention::new("Google Inc.", EntityLabel::Misc, None),
        ]);
        assert_eq!(out.entities.len(), 2);
    }

    #[test]
    fn unknown_record_is_error() {
        let spans = vec![EntitySpan::new("nope", 0, 3, "NSF", EntityLabel::Fund)];
        let err = disambiguate_spans(
            &spans,
            &[],
            &fund(),
            &Gazetteer::default(),
            &OverrideSet::default(),
            &DisambiguationConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, DisambiguationError::UnknownRecord { .. }));
    }

    fn arb_mentions() -> impl Strategy<Value = Vec<Mention>> {
        let surfaces = prop::sample::select(vec![
            "NSF", "National Science Foundation", "Natl Science Foundation", "J.", "John Doe", "JOHN DOE",
            "Google", "Google Inc.", "Pfizer", "123", "ABC-1234", "ABC-1235", "University of Oslo", "Drs.",
        ]);
        prop::collection::vec(
            (surfaces, prop::sample::select(EntityLabel::ALL.to_vec()), prop::sample::select(Domain::ALL.to_vec())),
            0..40,
        )
        .prop_map(|v| v.into_iter().map(|(s, l, d)| Mention::new(s, l, Some(d))).collect())
    }

    proptest! {
        #[test]
        fn conserves_mentions(ms in arb_mentions()) {
            let n = ms.len();
            let out = run(ms);
            let total: u64 = out.entities.iter().map(|e| e.mention_count).sum();
            prop_assert_eq!(total as usize + out.counts.dropped_short, n);
            for e in &out.entities {
                prop_assert_eq!(e.per_domain_counts.values().sum::<u64>(), e.mention_count);
            }
        }

        #[test]
        fn idempotent_without_overrides(ms in arb_mentions()) {
            let first = run(ms).entities;
            let replay: Vec<Mention> = first.iter().flat_map(CanonicalEntity::to_mentions).collect();
            let second = run(replay).entities;
            let strip = |v: &[CanonicalEntity]| v.iter()
                .map(|e| (e.canonical.clone(), e.label, e.mention_count, e.per_domain_counts.clone()))
                .collect::<Vec<_>>();
            prop_assert_eq!(strip(&first), strip(&second));
        }
    }
}
