//! Sentence and word counts per domain, and yearly medians with bootstrap
//! intervals.

use std::path::Path;

use ackmine::corpus::{map_disciplines, parse_reader, DomainMap};
use ackmine::stats::{length_stats, yearly_trends, TrendMetric};
use ackmine::text::AbbreviationGuard;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let parsed = parse_reader(std::io::BufReader::new(std::fs::File::open(dir.join("sample_corpus.txt"))?));
    let corpus = map_disciplines(parsed.records, &DomainMap::builtin());
    let guard = AbbreviationGuard::from_path(dir.join("abbreviations.txt"))?;

    for row in length_stats(&corpus, &guard) {
        println!(
            "{:<18} n={} median sentences {:?}, median words {:?}",
            row.domain.as_str(),
            row.records,
            row.median_sentences,
            row.median_words
        );
    }
    println!();
    for p in yearly_trends(&corpus, &guard, TrendMetric::Words, 1000, 7) {
        println!(
            "{:<18} {} n={} median {:>5.1}  [{:.1}, {:.1}]",
            p.domain.as_str(),
            p.year,
            p.n,
            p.median,
            p.ci_low,
            p.ci_high
        );
    }
    Ok(())
}
