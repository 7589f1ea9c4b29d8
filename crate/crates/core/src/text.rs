//! Sentence segmentation and word counting for acknowledgement texts.

use std::collections::HashSet;
use std::path::Path;

use serde::Serialize;

pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "Dr.", "Drs.", "No.", "Nos.", "Prof.", "e.g.", "i.e.", "Mr.", "Mrs.", "Ms.", "St.", "al.",
    "Fig.", "Figs.", "Eq.", "Ref.", "Refs.", "Inc.", "Ltd.", "Co.", "Corp.", "Dept.", "Univ.", "vs.",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("cannot split an empty text into sentences")]
    Empty,
}

/// Tokens after which a sentence-final mark does not end a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbbreviationGuard {
    entries: HashSet<String>,
}

impl Default for AbbreviationGuard {
    fn default() -> Self {
        Self::new(DEFAULT_ABBREVIATIONS.iter().copied())
    }
}

impl AbbreviationGuard {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        AbbreviationGuard {
            entries: entries
                .into_iter()
                .map(|s| s.as_ref().trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    /// One abbreviation per line; blank lines and `#` comments are skipped.
    pub fn from_path(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::new(text.lines().filter(|l| !l.trim_start().starts_with('#'))))
    }

    fn guards(&self, token: &str) -> bool {
        let token = token.trim_start_matches(|c: char| "([{\"'".contains(c));
        if self.entries.contains(token) {
            return true;
        }
        // single-letter initial, e.g. "J."
        let mut chars = token.chars();
        matches!((chars.next(), chars.next(), chars.next()), (Some(c), Some('.'), None) if c.is_alphabetic())
    }
}

/// Split `text` into sentences.
///
/// A boundary is a `.`, `?` or `!` followed by whitespace and then an
/// uppercase letter, or by the end of the text, unless the token carrying the
/// mark is in `guard`. Boundaries only ever fall on whitespace, so the
/// returned pieces concatenate back to the input modulo whitespace.
pub fn split_sentences(text: &str, guard: &AbbreviationGuard) -> Result<Vec<String>, TextError> {
    if text.trim().is_empty() {
        return Err(TextError::Empty);
    }
    let chunks: Vec<&str> = text.split_whitespace().collect();
    let mut sentences = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for (i, chunk) in chunks.iter().enumerate() {
        current.push(chunk);
        let ends_with_mark = chunk
            .trim_end_matches(|c: char| "\"')]}".contains(c))
            .ends_with(['.', '?', '!']);
        if !ends_with_mark {
            continue;
        }
        let next_upper = match chunks.get(i + 1) {
            None => true,
            Some(next) => next
                .trim_start_matches(|c: char| "\"'([{".contains(c))
                .chars()
                .next()
                .is_some_and(char::is_uppercase),
        };
        if next_upper && !guard.guards(chunk) {
            sentences.push(current.join(" "));
            current.clear();
        }
    }
    if !current.is_empty() {
        sentences.push(current.join(" "));
    }
    Ok(sentences)
}

fn strip_punct(chunk: &str) -> &str {
    chunk.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Number of whitespace-separated chunks that still contain something after
/// stripping leading and trailing punctuation.
pub fn count_words(text: &str) -> usize {
    text.split_whitespace().filter(|c| !strip_punct(c).is_empty()).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TextLength {
    pub sentence_count: usize,
    pub word_count: usize,
}

pub fn text_length(text: &str, guard: &AbbreviationGuard) -> Result<TextLength, TextError> {
    Ok(TextLength {
        sentence_count: split_sentences(text, guard)?.len(),
        word_count: count_words(text),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn split(s: &str) -> Vec<String> {
        split_sentences(s, &AbbreviationGuard::default()).unwrap()
    }

    #[test]
    fn sentence_examples() {
        assert_eq!(split("We thank J. Doe. Funding by NSF."), vec!["We thank J. Doe.", "Funding by NSF."]);
        assert_eq!(split("Thanks!"), vec!["Thanks!"]);
        assert_eq!(split("Funded by ABC. Supported by DEF."), vec!["Funded by ABC.", "Supported by DEF."]);
    }

    #[test]
    fn guard_list_suppresses_splits() {
        assert_eq!(split("We thank Prof. Smith and Dr. Jones. Grant No. 5 helped.").len(), 2);
        assert_eq!(split("We used tools, e.g. Python. It worked.").len(), 2);
        // lowercase continuation never splits
        assert_eq!(split("Supported by the U.S. government.").len(), 1);
        let none = AbbreviationGuard::new(Vec::<String>::new());
        // initials always guarded, Dr. only with the list
        assert_eq!(split_sentences("Thanks to Dr. Jones.", &none).unwrap().len(), 2);
        assert_eq!(split_sentences("Thanks to J. Jones.", &none).unwrap().len(), 1);
    }

    #[test]
    fn question_and_quotes() {
        assert_eq!(split("Why? Because \"we can.\" Yes").len(), 3);
    }

    #[test]
    fn empty_text_errors() {
        assert_eq!(split_sentences("  ", &AbbreviationGuard::default()), Err(TextError::Empty));
    }

    #[test]
    fn word_examples() {
        assert_eq!(count_words("We thank NSF."), 3);
        assert_eq!(count_words("grant no. 12345 , thanks"), 4);
        assert_eq!(count_words(""), 0);
        assert_eq!(count_words("well-known (NSF) -- ."), 2);
    }

    proptest! {
        #[test]
        fn whitespace_padding_does_not_change_counts(s in "[A-Za-z.,!? ]{0,80}", pad in "[ \t\n]{0,5}") {
            let padded = format!("{pad}{s}{pad}");
            prop_assert_eq!(count_words(&s), count_words(&padded));
        }

        #[test]
        fn sentences_partition_the_text(s in "[A-Za-z.,!?() ]{1,120}") {
            prop_assume!(!s.trim().is_empty());
            let g = AbbreviationGuard::default();
            let parts = split_sentences(&s, &g).unwrap();
            prop_assert!(parts.iter().all(|p| !p.is_empty()));
            let strip = |x: &str| x.chars().filter(|c| !c.is_whitespace()).collect::<String>();
            prop_assert_eq!(strip(&parts.concat()), strip(&s));
            let per: usize = parts.iter().map(|p| count_words(p)).sum();
            prop_assert_eq!(per, count_words(&s));
        }
    }
}
