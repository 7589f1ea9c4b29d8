//! Reader and writer for field-tagged bibliographic exports.
//!
//! A file is a sequence of records. Each record is a run of lines of the form
//! `TAG value`, where `TAG` is a two-character field code in the first two
//! columns. Lines starting with whitespace continue the previous field. A line
//! consisting of `ER` closes the record. Export headers (`FN`, `VR`) and the
//! end-of-file marker `EF` are accepted between records and ignored.
//!
//! Recognized fields:
//!
//! | tag | meaning                               |
//! |-----|---------------------------------------|
//! | UT  | record id                             |
//! | PY  | publication year                      |
//! | LA  | language                              |
//! | DT  | document type                         |
//! | SC  | categories, `;`-separated             |
//! | TC  | citation count                        |
//! | FT  | acknowledgement text, lines joined    |
//! | FO  | funding organisations, one per line   |
//! | FG  | grant numbers, one per line           |
//!
//! Every other tag is skipped. Malformed records are reported and skipped, the
//! rest of the stream is still read.

use std::fmt::Write as _;
use std::io::BufRead;

use super::record::CorpusRecord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordErrorKind {
    #[error("missing required field {0}")]
    MissingField(&'static str),
    #[error("field {tag} is not an integer: {value:?}")]
    NotAnInteger { tag: &'static str, value: String },
    #[error("duplicate record id {0:?}")]
    DuplicateId(String),
    #[error("record starting at line {start_line} is not terminated by ER before end of input")]
    Truncated { start_line: usize },
    #[error("continuation line outside of any field")]
    OrphanContinuation,
    #[error("malformed tag line {0:?}")]
    MalformedTag(String),
    #[error("invalid UTF-8 input: {0}")]
    Io(String),
}

/// A record-level parse problem. `line` is 1-based and points at the line that
/// triggered the error (for a truncated record, the last line of input).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}{}: {kind}", record_id.as_deref().map(|r| format!(" (record {r})")).unwrap_or_default())]
pub struct RecordError {
    pub line: usize,
    pub record_id: Option<String>,
    pub kind: RecordErrorKind,
}

/// Records that parsed cleanly plus every record-level error encountered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParseOutcome {
    pub records: Vec<CorpusRecord>,
    pub errors: Vec<RecordError>,
}

impl ParseOutcome {
    pub fn merge(&mut self, other: ParseOutcome) {
        self.records.extend(other.records);
        self.errors.extend(other.errors);
    }
}

#[derive(Default)]
struct Block {
    start_line: usize,
    fields: Vec<(String, Vec<String>, usize)>,
}

impl Block {
    fn values<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a (String, Vec<String>, usize)> + 'a {
        self.fields.iter().filter(move |(t, _, _)| t == tag)
    }

    fn first<'a>(&'a self, tag: &'a str) -> Option<(&'a [String], usize)> {
        self.values(tag).next().map(|(_, v, l)| (v.as_slice(), *l))
    }
}

fn join_lines(lines: &[String]) -> String {
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

fn split_list(lines: &[String]) -> impl Iterator<Item = String> + '_ {
    lines
        .iter()
        .flat_map(|l| l.split(';'))
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
}

fn parse_int<T: std::str::FromStr>(
    block: &Block,
    tag: &'static str,
    id: &str,
) -> Result<Option<T>, RecordError> {
    let Some((lines, line)) = block.first(tag) else {
        return Ok(None);
    };
    let value = join_lines(lines);
    value.parse::<T>().map(Some).map_err(|_| RecordError {
        line,
        record_id: Some(id.to_string()),
        kind: RecordErrorKind::NotAnInteger { tag, value },
    })
}

fn build_record(block: &Block, er_line: usize) -> Result<CorpusRecord, RecordError> {
    let id = match block.first("UT") {
        Some((lines, _)) if !join_lines(lines).is_empty() => join_lines(lines),
        _ => {
            return Err(RecordError {
                line: er_line,
                record_id: None,
                kind: RecordErrorKind::MissingField("UT"),
            })
        }
    };
    let year = parse_int::<i32>(block, "PY", &id)?.ok_or_else(|| RecordError {
        line: er_line,
        record_id: Some(id.clone()),
        kind: RecordErrorKind::MissingField("PY"),
    })?;
    let citation_count = parse_int::<u64>(block, "TC", &id)?.unwrap_or(0);

    let mut rec = CorpusRecord::new(id, year);
    rec.citation_count = citation_count;
    if let Some((lines, _)) = block.first("LA") {
        rec.language = join_lines(lines);
    }
    if let Some((lines, _)) = block.first("DT") {
        rec.doc_type = join_lines(lines);
    }
    if let Some((lines, _)) = block.first("SC") {
        // categories may wrap onto continuation lines mid-name
        let joined = join_lines(lines);
        rec.categories = joined
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
    }
    if let Some((lines, _)) = block.first("FT") {
        let text = join_lines(lines);
        if !text.is_empty() {
            rec.ack_text = Some(text);
        }
    }
    for (_, lines, _) in block.values("FO") {
        rec.funding_orgs.extend(split_list(lines));
    }
    for (_, lines, _) in block.values("FG") {
        rec.grant_numbers.extend(split_list(lines));
    }
    Ok(rec)
}

const FILE_LEVEL_TAGS: [&str; 3] = ["FN", "VR", "EF"];

/// Parse a complete field-tagged document held in memory.
pub fn parse_field_tagged(input: &str) -> ParseOutcome {
    let mut out = ParseOutcome::default();
    let mut seen = std::collections::HashSet::new();
    let mut current: Option<Block> = None;
    let mut last_line = 0;
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let first = line.chars().next().unwrap_or(' ');
        if first.is_whitespace() {
            match current.as_mut().and_then(|b| b.fields.last_mut()) {
                Some((_, lines, _)) => lines.push(line.trim().to_string()),
                None => out.errors.push(RecordError {
                    line: lineno,
                    record_id: None,
                    kind: RecordErrorKind::OrphanContinuation,
                }),
            }
            continue;
        }

        let (tag, value) = match line.char_indices().nth(2) {
            None => (line, ""),
            Some((pos, c)) if c == ' ' || c == '\t' => (&line[..pos], line[pos..].trim()),
            Some(_) => {
                out.errors.push(RecordError {
                    line: lineno,
                    record_id: None,
                    kind: RecordErrorKind::MalformedTag(line.to_string()),
                });
                continue;
            }
        };

        if tag == "ER" {
            match current.take() {
                Some(block) => match build_record(&block, lineno) {
                    Ok(rec) => {
                        if seen.insert(rec.record_id.clone()) {
                            out.records.push(rec);
                        } else {
                            out.errors.push(RecordError {
                                line: lineno,
                                record_id: Some(rec.record_id.clone()),
                                kind: RecordErrorKind::DuplicateId(rec.record_id),
                            });
                        }
                    }
                    Err(e) => out.errors.push(e),
                },
                None => out.errors.push(RecordError {
                    line: lineno,
                    record_id: None,
                    kind: RecordErrorKind::MalformedTag("ER without open record".into()),
                }),
            }
            continue;
        }

        if current.is_none() && FILE_LEVEL_TAGS.contains(&tag) {
            continue;
        }
        let block = current.get_or_insert_with(|| Block {
            start_line: lineno,
            fields: Vec::new(),
        });
        block
            .fields
            .push((tag.to_string(), vec![value.to_string()], lineno));
    }

    if let Some(block) = current {
        let record_id = block.first("UT").map(|(l, _)| join_lines(l));
        out.errors.push(RecordError {
            line: last_line,
            record_id,
            kind: RecordErrorKind::Truncated {
                start_line: block.start_line,
            },
        });
    }
    out
}

/// Parse from any buffered reader. I/O and encoding failures become a single
/// error entry.
pub fn parse_reader<R: BufRead>(mut reader: R) -> ParseOutcome {
    let mut buf = String::new();
    match reader.read_to_string(&mut buf) {
        Ok(_) => parse_field_tagged(&buf),
        Err(e) => ParseOutcome {
            records: Vec::new(),
            errors: vec![RecordError {
                line: 0,
                record_id: None,
                kind: RecordErrorKind::Io(e.to_string()),
            }],
        },
    }
}

/// Render records back into field-tagged form. The output parses back into
/// structurally equal records. Domain assignment is not part of the format.
pub fn write_field_tagged(records: &[CorpusRecord]) -> String {
    let mut out = String::from("FN Clarivate Analytics Web of Science\nVR 1.0\n");
    for r in records {
        let _ = writeln!(out, "UT {}", r.record_id);
        let _ = writeln!(out, "PY {}", r.year);
        if !r.language.is_empty() {
            let _ = writeln!(out, "LA {}", r.language);
        }
        if !r.doc_type.is_empty() {
            let _ = writeln!(out, "DT {}", r.doc_type);
        }
        if !r.categories.is_empty() {
            let _ = writeln!(out, "SC {}", r.categories.join("; "));
        }
        if let Some(text) = &r.ack_text {
            let _ = writeln!(out, "FT {text}");
        }
        write_list(&mut out, "FO", &r.funding_orgs);
        write_list(&mut out, "FG", &r.grant_numbers);
        let _ = writeln!(out, "TC {}", r.citation_count);
        out.push_str("ER\n\n");
    }
    out.push_str("EF\n");
    out
}

fn write_list(out: &mut String, tag: &str, items: &[String]) {
    for (i, item) in items.iter().enumerate() {
        if i == 0 {
            let _ = writeln!(out, "{tag} {item}");
        } else {
            let _ = writeln!(out, "   {item}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_transcription() {
        let src = "UT W1\nPY 2015\nLA English\nDT Article\nTC 3\nFT This work was funded by NSF.\nER\n";
        let out = parse_field_tagged(src);
        assert!(out.errors.is_empty(), "{:?}", out.errors);
        let r = &out.records[0];
        assert_eq!(r.record_id, "W1");
        assert_eq!(r.year, 2015);
        assert_eq!(r.citation_count, 3);
        assert_eq!(r.language, "English");
        assert_eq!(r.doc_type, "Article");
        assert_eq!(r.ack_text.as_deref(), Some("This work was funded by NSF."));
    }

    #[test]
    fn ft_continuation_joined_with_single_space() {
        let src = "UT W1\nPY 2015\nFT The authors\n  thank J. Doe.\nER\n";
        let out = parse_field_tagged(src);
        assert_eq!(out.records[0].ack_text.as_deref(), Some("The authors thank J. Doe."));
    }

    #[test]
    fn field_order_irrelevant_and_unknown_tags_ignored() {
        let a = parse_field_tagged("UT W1\nPY 2015\nXX junk\nTC 7\nER\n");
        let b = parse_field_tagged("TC 7\nZZ other\nPY 2015\nUT W1\nER\n");
        assert_eq!(a.records, b.records);
        assert!(a.errors.is_empty() && b.errors.is_empty());
    }

    #[test]
    fn funders_one_per_line_and_semicolons() {
        let src = "UT W3\nPY 2016\nFO National Science Foundation\n   European Research Council; DFG\nFG 12345\n   ABC-99\nER\n";
        let r = &parse_field_tagged(src).records[0];
        assert_eq!(
            r.funding_orgs,
            vec!["National Science Foundation", "European Research Council", "DFG"]
        );
        assert_eq!(r.grant_numbers, vec!["12345", "ABC-99"]);
        assert!(r.ack_text.is_none());
    }

    #[test]
    fn malformed_records_collected_parsing_continues() {
        let src = "UT A\nPY twenty\nER\nPY 2015\nER\nUT C\nPY 2015\nTC -1\nER\nUT D\nPY 2017\nER\n";
        let out = parse_field_tagged(src);
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].record_id, "D");
        assert_eq!(out.errors.len(), 3);
        assert!(matches!(
            out.errors[0].kind,
            RecordErrorKind::NotAnInteger { tag: "PY", .. }
        ));
        assert_eq!(out.errors[0].line, 2);
        assert_eq!(out.errors[1].kind, RecordErrorKind::MissingField("UT"));
        assert!(matches!(
            out.errors[2].kind,
            RecordErrorKind::NotAnInteger { tag: "TC", .. }
        ));
    }

    #[test]
    fn truncated_final_record_names_line() {
        let src = "UT A\nPY 2015\nER\nUT B\nPY 2016\n";
        let out = parse_field_tagged(src);
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.errors.len(), 1);
        let e = &out.errors[0];
        assert_eq!(e.line, 5);
        assert_eq!(e.kind, RecordErrorKind::Truncated { start_line: 4 });
        assert!(e.to_string().contains("line 5"));
    }

    #[test]
    fn header_lines_and_crlf() {
        let src = "\u{feff}FN Clarivate\r\nVR 1.0\r\nUT A\r\nPY 2015\r\nER\r\nEF\r\n";
        let out = parse_field_tagged(src);
        assert!(out.errors.is_empty(), "{:?}", out.errors);
        assert_eq!(out.records.len(), 1);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let out = parse_field_tagged("UT A\nPY 2015\nER\nUT A\nPY 2016\nER\n");
        assert_eq!(out.records.len(), 1);
        assert!(matches!(out.errors[0].kind, RecordErrorKind::DuplicateId(_)));
    }

    #[test]
    fn writer_output_reparses() {
        let src = "UT W1\nPY 2015\nLA English\nDT Article\nSC Economics; Sociology\nFT Thanks to\n  A. B.\nFO NSF\n  DFG\nFG 1\nTC 2\nER\n";
        let first = parse_field_tagged(src).records;
        let again = parse_field_tagged(&write_field_tagged(&first));
        assert!(again.errors.is_empty());
        assert_eq!(again.records, first);
    }
}
