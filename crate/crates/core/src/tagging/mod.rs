//! Entity spans: the baseline tagger, external tag import, evaluation and
//! person-affiliation linking.

mod affiliation;
mod baseline;
mod evaluate;
mod interchange;
mod label;
mod span;

pub use affiliation::{link_person_affiliation, AffiliationLink, DEFAULT_LINK_WINDOW};
pub use baseline::{BaselineTagger, TagError};
pub use evaluate::{evaluate_tagger, EvaluationReport, LabelScore};
pub use interchange::{
    import_external_tags, read_tags_jsonl, write_tags_jsonl, ImportError, ImportErrorKind, ImportOutcome,
};
pub use label::{EntityLabel, UnknownLabel};
pub use span::{char_slice, EntitySpan};
