//! Dictionary and cue-word tagger.
//!
//! Three candidate sources feed one overlap resolver:
//!
//! 1. gazetteer names, abbreviations and unified forms (FUND, UNI, COR),
//!    optionally followed by a parenthesised abbreviation;
//! 2. grant numbers: tokens of at least four characters containing a digit,
//!    at most six tokens after a grant cue;
//! 3. persons: runs of two to four capitalized tokens or initials, at most
//!    four tokens after a gratitude cue.
//!
//! Candidates are accepted greedily by label precedence
//! (FUND > UNI > COR > GRNB > IND), then leftmost, then longest.

use std::collections::{HashMap, HashSet};

use aho_corasick::{AhoCorasick, MatchKind};

use super::label::EntityLabel;
use super::span::EntitySpan;
use crate::corpus::CorpusRecord;
use crate::gazetteer::Gazetteer;

const GRANT_CUES: &[&str] = &["grant", "grants", "award", "project", "contract", "number"];
const GRANT_DOTTED_CUES: &[&str] = &["no.", "nos."];
const PERSON_CUES: &[&str] = &["thank", "thanks", "grateful", "acknowledge", "indebted"];
const GRANT_WINDOW: usize = 6;
const PERSON_WINDOW: usize = 4;

// capitalized words that start sentences far more often than names
const NOT_NAMES: &[&str] = &[
    "We", "The", "This", "These", "Our", "In", "For", "And", "Also", "All", "Any", "Special", "Finally",
    "Thanks", "Thank", "He", "She", "They", "It", "Their", "His", "Her", "Its", "Dr", "Prof", "Mr", "Mrs", "Ms",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TagError {
    #[error("record {0} has no acknowledgement text")]
    MissingAckText(String),
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    start: usize,
    end: usize,
    label: EntityLabel,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    start: usize,
    raw: &'a str,
}

impl<'a> Token<'a> {
    /// Byte range of the token without surrounding punctuation.
    fn core(&self) -> Option<(usize, usize)> {
        let lead = self.raw.len() - self.raw.trim_start_matches(|c: char| !c.is_alphanumeric()).len();
        let trimmed = self.raw.trim_matches(|c: char| !c.is_alphanumeric());
        (!trimmed.is_empty()).then(|| (self.start + lead, self.start + lead + trimmed.len()))
    }

    fn stripped_lower(&self) -> String {
        self.raw.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase()
    }

    fn dotted_lower(&self) -> String {
        self.raw
            .trim_start_matches(|c: char| !c.is_alphanumeric())
            .trim_end_matches(|c: char| !c.is_alphanumeric() && c != '.')
            .to_lowercase()
    }
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { start: s, raw: &text[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { start: s, raw: &text[s..] });
    }
    out
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Shape of a token inside a person-name run.
struct NamePart {
    start: usize,
    end: usize,
    breaks_before: bool,
    breaks_after: bool,
}

fn name_part(tok: &Token<'_>) -> Option<NamePart> {
    let body = tok.raw.trim_start_matches(|c: char| !c.is_alphanumeric());
    let lead = tok.raw.len() - body.len();
    let start = tok.start + lead;
    let mut chars = body.chars();
    let first = chars.next()?;
    if !first.is_uppercase() {
        return None;
    }
    // initial: "J." possibly followed by more punctuation
    if chars.next() == Some('.') {
        let rest = &body[first.len_utf8() + 1..];
        if rest.chars().all(|c| !c.is_alphanumeric()) {
            return Some(NamePart {
                start,
                end: start + first.len_utf8() + 1,
                breaks_before: lead > 0,
                breaks_after: !rest.is_empty(),
            });
        }
    }
    let core = body.trim_end_matches(|c: char| !c.is_alphanumeric());
    let valid = core.chars().all(|c| c.is_alphabetic() || c == '-' || c == '\'' || c == '’')
        && core.chars().any(char::is_lowercase)
        && !NOT_NAMES.contains(&core);
    valid.then(|| NamePart {
        start,
        end: start + core.len(),
        breaks_before: lead > 0,
        breaks_after: core.len() < body.len(),
    })
}

pub struct BaselineTagger {
    automaton: Option<AhoCorasick>,
    pattern_labels: Vec<EntityLabel>,
    known: HashSet<String>,
}

impl BaselineTagger {
    pub fn new(fund: &Gazetteer, uni: &Gazetteer, cor: &Gazetteer) -> Self {
        let mut best: HashMap<&str, EntityLabel> = HashMap::new();
        for (gaz, label) in [(fund, EntityLabel::Fund), (uni, EntityLabel::Uni), (cor, EntityLabel::Cor)] {
            for s in gaz.surface_forms() {
                // abbreviations of one character match too much
                if s.chars().count() < 2 {
                    continue;
                }
                best.entry(s)
                    .and_modify(|l| {
                        if label.precedence() < l.precedence() {
                            *l = label
                        }
                    })
                    .or_insert(label);
            }
        }
        let mut patterns: Vec<(&str, EntityLabel)> = best.into_iter().collect();
        patterns.sort();
        let known = patterns.iter().map(|(s, _)| s.to_string()).collect();
        let automaton = (!patterns.is_empty()).then(|| {
            AhoCorasick::builder()
                .match_kind(MatchKind::Standard)
                .build(patterns.iter().map(|(s, _)| s))
                .expect("gazetteer automaton")
        });
        BaselineTagger {
            automaton,
            pattern_labels: patterns.iter().map(|(_, l)| *l).collect(),
            known,
        }
    }

    pub fn tag(&self, record: &CorpusRecord) -> Result<Vec<EntitySpan>, TagError> {
        let text = record
            .ack_text
            .as_deref()
            .ok_or_else(|| TagError::MissingAckText(record.record_id.clone()))?;
        Ok(self.tag_text(&record.record_id, text))
    }

    /// Spans for one text, sorted by start and pairwise disjoint.
    pub fn tag_text(&self, record_id: &str, text: &str) -> Vec<EntitySpan> {
        let tokens = tokenize(text);
        let mut candidates = self.gazetteer_candidates(text);
        candidates.extend(grant_candidates(&tokens));
        candidates.extend(
            person_candidates(&tokens)
                .into_iter()
                .filter(|c| !self.known.contains(&text[c.start..c.end])),
        );

        candidates.sort_by_key(|c| (c.label.precedence(), c.start, std::cmp::Reverse(c.end)));
        let mut accepted: Vec<Candidate> = Vec::new();
        for c in candidates {
            if accepted.iter().all(|a| c.end <= a.start || a.end <= c.start) {
                accepted.push(c);
            }
        }
        accepted.sort_by_key(|c| c.start);

        let mut spans = Vec::with_capacity(accepted.len());
        let mut chars_before = 0;
        let mut byte_pos = 0;
        for c in accepted {
            chars_before += text[byte_pos..c.start].chars().count();
            let len = text[c.start..c.end].chars().count();
            spans.push(EntitySpan::new(
                record_id,
                chars_before,
                chars_before + len,
                &text[c.start..c.end],
                c.label,
            ));
            chars_before += len;
            byte_pos = c.end;
        }
        spans
    }

    fn gazetteer_candidates(&self, text: &str) -> Vec<Candidate> {
        let Some(ac) = &self.automaton else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for m in ac.find_overlapping_iter(text) {
            let (start, end) = (m.start(), m.end());
            let before_ok = text[..start].chars().next_back().is_none_or(|c| !is_word_char(c));
            let after_ok = text[end..].chars().next().is_none_or(|c| !is_word_char(c));
            if before_ok && after_ok {
                out.push(Candidate {
                    start,
                    end: end + parenthetical_len(&text[end..]),
                    label: self.pattern_labels[m.pattern().as_usize()],
                });
            }
        }
        out
    }
}

/// Length of a directly following " (ABBR)" group: one token with an
/// uppercase letter, at most 15 characters.
fn parenthetical_len(rest: &str) -> usize {
    let trimmed = rest.trim_start_matches(' ');
    let Some(inner) = trimmed.strip_prefix('(') else {
        return 0;
    };
    let Some(close) = inner.find(')') else {
        return 0;
    };
    let content = &inner[..close];
    let ok = !content.is_empty()
        && content.chars().count() <= 15
        && !content.contains(|c: char| c.is_whitespace() || c == '(')
        && content.chars().any(char::is_uppercase);
    if ok {
        rest.len() - trimmed.len() + 1 + close + 1
    } else {
        0
    }
}

fn grant_candidates(tokens: &[Token<'_>]) -> Vec<Candidate> {
    let is_cue = |t: &Token<'_>| {
        GRANT_CUES.contains(&t.stripped_lower().as_str()) || GRANT_DOTTED_CUES.contains(&t.dotted_lower().as_str())
    };
    let cue_flags: Vec<bool> = tokens.iter().map(is_cue).collect();
    let mut out = Vec::new();
    for (j, tok) in tokens.iter().enumerate() {
        let Some((start, end)) = tok.core() else { continue };
        let core = &tok.raw[start - tok.start..end - tok.start];
        if core.chars().count() < 4 || !core.chars().any(|c| c.is_ascii_digit()) {
            continue;
        }
        if (j.saturating_sub(GRANT_WINDOW)..j).any(|k| cue_flags[k]) {
            out.push(Candidate {
                start,
                end,
                label: EntityLabel::Grnb,
            });
        }
    }
    out
}

fn person_candidates(tokens: &[Token<'_>]) -> Vec<Candidate> {
    let cue_flags: Vec<bool> = tokens
        .iter()
        .map(|t| PERSON_CUES.contains(&t.stripped_lower().as_str()))
        .collect();
    let parts: Vec<Option<NamePart>> = tokens.iter().map(name_part).collect();

    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut open: Option<usize> = None;
    for (i, part) in parts.iter().enumerate() {
        match part {
            None => {
                if let Some(s) = open.take() {
                    runs.push((s, i - 1));
                }
            }
            Some(p) => {
                if p.breaks_before {
                    if let Some(s) = open.take() {
                        runs.push((s, i - 1));
                    }
                }
                if open.is_none() {
                    open = Some(i);
                }
                if p.breaks_after {
                    runs.push((open.take().unwrap(), i));
                }
            }
        }
    }
    if let Some(s) = open {
        runs.push((s, tokens.len() - 1));
    }

    runs.into_iter()
        .filter(|(a, b)| (2..=4).contains(&(b - a + 1)))
        .filter(|(a, _)| (a.saturating_sub(PERSON_WINDOW)..*a).any(|k| cue_flags[k]))
        .map(|(a, b)| Candidate {
            start: parts[a].as_ref().unwrap().start,
            end: parts[b].as_ref().unwrap().end,
            label: EntityLabel::Ind,
        })
        .collect()
}
