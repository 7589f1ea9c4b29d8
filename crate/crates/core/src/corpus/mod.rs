//! Corpus ingest: field-tagged parsing, discipline mapping, filtering,
//! sampling and coverage.

mod coverage;
mod domain_map;
mod field_tagged;
mod record;
mod select;

pub use coverage::{coverage_stats, CoverageRow};
pub use domain_map::{map_disciplines, DomainMap, DomainMapError};
pub use field_tagged::{
    parse_field_tagged, parse_reader, write_field_tagged, ParseOutcome, RecordError, RecordErrorKind,
};
pub use record::{CorpusRecord, Domain, UnknownDomain};
pub use select::{filter_records, sample_per_domain, CorpusFilter, SelectError};

use std::io::{BufRead, Write};

/// Lowercase and collapse runs of whitespace; used for every
/// case-insensitive key comparison in this module.
pub(crate) fn normalize_key(s: &str) -> String {
    s.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Read a canonical corpus (one JSON record per line). Blank lines are skipped.
pub fn read_corpus_jsonl<R: BufRead>(reader: R) -> Result<Vec<CorpusRecord>, JsonlError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| JsonlError::Json { line: i + 1, source })?);
    }
    Ok(out)
}

pub fn write_corpus_jsonl<W: Write>(mut w: W, records: &[CorpusRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
