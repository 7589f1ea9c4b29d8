use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use ackmine::corpus::read_corpus_jsonl;
use ackmine::disambiguation::{
    disambiguate, disambiguate_spans, read_entities_jsonl, CanonicalEntity, DisambiguationConfig, OverrideSet,
};
use ackmine::gazetteer::Gazetteer;
use ackmine::tagging::read_tags_jsonl;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn open(name: &str) -> BufReader<File> {
    BufReader::new(File::open(fixture(name)).unwrap())
}

fn run_fixture() -> Vec<CanonicalEntity> {
    let corpus = read_corpus_jsonl(open("disambiguation_corpus.jsonl")).unwrap();
    let spans = read_tags_jsonl(open("disambiguation_spans.jsonl")).unwrap();
    assert_eq!(spans.len(), 10);
    let fund = Gazetteer::from_path(fixture("fund.csv")).unwrap();
    let uni = Gazetteer::from_path(fixture("uni.csv")).unwrap();
    let overrides = OverrideSet::from_path(fixture("overrides.csv")).unwrap();
    let out = disambiguate_spans(&spans, &corpus, &fund, &uni, &overrides, &DisambiguationConfig::default()).unwrap();
    assert_eq!(out.counts.dropped_short, 2);
    assert_eq!(out.counts.relabelled, 1);
    assert_eq!(out.counts.aggregated_mentions, 8);
    out.entities
}

fn sorted(mut v: Vec<CanonicalEntity>) -> Vec<CanonicalEntity> {
    v.sort_by(|a, b| (a.label, &a.canonical).cmp(&(b.label, &b.canonical)));
    v
}

#[test]
fn ten_span_fixture_matches_hand_derived_entities() {
    let want = read_entities_jsonl(open("disambiguation_expected.jsonl")).unwrap();
    assert_eq!(sorted(run_fixture()), sorted(want));
}

#[test]
fn fixture_output_is_a_fixed_point() {
    let first = run_fixture();
    let fund = Gazetteer::from_path(fixture("fund.csv")).unwrap();
    let uni = Gazetteer::from_path(fixture("uni.csv")).unwrap();
    let overrides = OverrideSet::from_path(fixture("overrides.csv")).unwrap();
    let mentions = first.iter().flat_map(CanonicalEntity::to_mentions).collect();
    let second = disambiguate(mentions, &fund, &uni, &overrides, &DisambiguationConfig::default()).entities;
    let key = |v: &[CanonicalEntity]| {
        sorted(v.to_vec())
            .into_iter()
            .map(|e| (e.canonical, e.label, e.mention_count, e.per_domain_counts))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(&second), key(&first));
}
