use serde::{Deserialize, Serialize};

use super::label::EntityLabel;

/// One tagged mention inside a record's acknowledgement text.
///
/// Offsets count Unicode scalar values; `end` is exclusive. On disk the
/// surface string is stored under the key `text`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EntitySpan {
    pub record_id: String,
    pub start: usize,
    pub end: usize,
    #[serde(rename = "text")]
    pub surface: String,
    pub label: EntityLabel,
}

impl EntitySpan {
    pub fn new(record_id: impl Into<String>, start: usize, end: usize, surface: impl Into<String>, label: EntityLabel) -> Self {
        EntitySpan {
            record_id: record_id.into(),
            start,
            end,
            surface: surface.into(),
            label,
        }
    }

    pub fn overlaps(&self, other: &EntitySpan) -> bool {
        self.record_id == other.record_id && self.start < other.end && other.start < self.end
    }
}

/// Slice `text` by character offsets. `None` when the range is empty,
/// reversed or out of bounds.
pub fn char_slice(text: &str, start: usize, end: usize) -> Option<&str> {
    if start >= end {
        return None;
    }
    let mut idx = text.char_indices().map(|(b, _)| b).chain(std::iter::once(text.len()));
    let b_start = idx.nth(start)?;
    let b_end = idx.nth(end - start - 1)?;
    Some(&text[b_start..b_end])
}
