//! Tag-interchange JSON-lines: `{record_id, start, end, text, label}` per
//! line, character offsets, end exclusive.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use serde::Deserialize;

use super::label::EntityLabel;
use super::span::{char_slice, EntitySpan};
use crate::corpus::CorpusRecord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImportErrorKind {
    #[error("not a valid interchange object: {0}")]
    Json(String),
    #[error("unknown record_id {0:?}")]
    UnknownRecord(String),
    #[error("record {0:?} has no acknowledgement text")]
    NoText(String),
    #[error("offsets [{start}, {end}) out of range for text of {len} characters")]
    OutOfRange { start: i64, end: i64, len: usize },
    #[error("surface mismatch: span text {given:?} but slice is {actual:?}")]
    SurfaceMismatch { given: String, actual: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("span {later} overlaps span {earlier} (line {earlier_line})")]
    Overlap {
        earlier: String,
        earlier_line: usize,
        later: String,
    },
    #[error("read failure: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("tags line {line}: {kind}")]
pub struct ImportError {
    pub line: usize,
    pub kind: ImportErrorKind,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ImportOutcome {
    /// Accepted spans, ordered by record id then start offset.
    pub spans: Vec<EntitySpan>,
    pub errors: Vec<ImportError>,
}

#[derive(Deserialize)]
struct RawSpan {
    record_id: String,
    start: i64,
    end: i64,
    text: String,
    label: String,
}

fn describe(s: &EntitySpan) -> String {
    format!("{}[{}..{}) {:?} {}", s.record_id, s.start, s.end, s.surface, s.label)
}

/// Read and validate interchange lines against `corpus`. Invalid lines are
/// reported with their 1-based line number and skipped. When two spans of a
/// record overlap, the one read first is kept.
pub fn import_external_tags<R: BufRead>(reader: R, corpus: &[CorpusRecord]) -> ImportOutcome {
    let texts: HashMap<&str, Option<&str>> = corpus
        .iter()
        .map(|r| (r.record_id.as_str(), r.ack_text.as_deref()))
        .collect();
    let mut out = ImportOutcome::default();
    let mut accepted: Vec<(usize, EntitySpan)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let fail = |kind| ImportError { line: lineno, kind };
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                out.errors.push(fail(ImportErrorKind::Io(e.to_string())));
                break;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawSpan = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                out.errors.push(fail(ImportErrorKind::Json(e.to_string())));
                continue;
            }
        };
        match validate(raw, &texts) {
            Ok(span) => accepted.push((lineno, span)),
            Err(kind) => out.errors.push(fail(kind)),
        }
    }

    let mut by_record: BTreeMap<String, Vec<(usize, EntitySpan)>> = BTreeMap::new();
    for (line, span) in accepted {
        by_record.entry(span.record_id.clone()).or_default().push((line, span));
    }
    for (_, spans) in by_record {
        // spans arrive in file order, so the first of an overlapping pair wins
        let mut kept: Vec<(usize, EntitySpan)> = Vec::new();
        for (line, span) in spans {
            if let Some((kline, k)) = kept.iter().find(|(_, k)| k.overlaps(&span)) {
                out.errors.push(ImportError {
                    line,
                    kind: ImportErrorKind::Overlap {
                        earlier: describe(k),
                        earlier_line: *kline,
                        later: describe(&span),
                    },
                });
                continue;
            }
            kept.push((line, span));
        }
        kept.sort_by_key(|(_, s)| s.start);
        out.spans.extend(kept.into_iter().map(|(_, s)| s));
    }
    out.errors.sort_by_key(|e| e.line);
    out
}

fn validate(raw: RawSpan, texts: &HashMap<&str, Option<&str>>) -> Result<EntitySpan, ImportErrorKind> {
    let text = match texts.get(raw.record_id.as_str()) {
        None => return Err(ImportErrorKind::UnknownRecord(raw.record_id)),
        Some(None) => return Err(ImportErrorKind::NoText(raw.record_id)),
        Some(Some(t)) => *t,
    };
    let label: EntityLabel = raw
        .label
        .parse()
        .map_err(|_| ImportErrorKind::UnknownLabel(raw.label.clone()))?;
    let len = text.chars().count();
    if raw.start < 0 || raw.end <= raw.start || raw.end as usize > len {
        return Err(ImportErrorKind::OutOfRange {
            start: raw.start,
            end: raw.end,
            len,
        });
    }
    let (start, end) = (raw.start as usize, raw.end as usize);
    let actual = char_slice(text, start, end).expect("range checked");
    if actual != raw.text {
        return Err(ImportErrorKind::SurfaceMismatch {
            given: raw.text,
            actual: actual.to_string(),
        });
    }
    Ok(EntitySpan::new(raw.record_id, start, end, raw.text, label))
}

/// Write spans in interchange form, one object per line.
pub fn write_tags_jsonl<W: Write>(mut w: W, spans: &[EntitySpan]) -> std::io::Result<()> {
    for s in spans {
        serde_json::to_writer(&mut w, s)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Read interchange lines without corpus validation (e.g. gold files already
/// checked elsewhere). Fails on the first malformed line.
pub fn read_tags_jsonl<R: BufRead>(reader: R) -> Result<Vec<EntitySpan>, ImportError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| ImportError {
            line: idx + 1,
            kind: ImportErrorKind::Io(e.to_string()),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| ImportError {
            line: idx + 1,
            kind: ImportErrorKind::Json(e.to_string()),
        })?);
    }
    Ok(out)
}
