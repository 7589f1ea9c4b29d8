//! Parse a field-tagged export, assign domains, filter and print coverage.
//!
//! cargo run --example ingest_corpus [FILE]

use std::path::PathBuf;

use ackmine::corpus::{coverage_stats, filter_records, map_disciplines, parse_reader, CorpusFilter, DomainMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/sample_corpus.txt"));
    let outcome = parse_reader(std::io::BufReader::new(std::fs::File::open(&path)?));
    for e in &outcome.errors {
        eprintln!("skipped: {e}");
    }
    let parsed = outcome.records.len();
    let records = filter_records(map_disciplines(outcome.records, &DomainMap::builtin()), &CorpusFilter::default_study());
    println!("{parsed} parsed, {} kept", records.len());

    println!("{:<18} {:>8} {:>8} {:>8}", "domain", "records", "ack %", "funded %");
    for row in coverage_stats(&records) {
        let pct = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.1}"));
        println!(
            "{:<18} {:>8} {:>8} {:>8}",
            row.domain.as_str(),
            row.article_count,
            pct(row.pct_with_ack_text),
            pct(row.pct_of_those_with_funding_index)
        );
    }
    Ok(())
}
