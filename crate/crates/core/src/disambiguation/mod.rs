//! Merging surface variants of acknowledged entities into canonical
//! entities: gazetteer rewriting, corporation clustering, misspelling
//! merging, noise removal and manual relabelling.

mod canonicalize;
mod cluster;
mod overrides;
mod pipeline;

pub use canonicalize::{canonicalize_against_gazetteer, gazetteer_form};
pub use cluster::{cluster_by_ratio, cluster_case_insensitive, cluster_corporations, Cluster, UnionFind};
pub use overrides::{apply_overrides, OverrideError, OverrideRule, OverrideSet};
pub use pipeline::{
    aggregate, disambiguate, disambiguate_spans, drop_short_entities, merge_misspellings, read_entities_jsonl,
    write_entities_jsonl, CanonicalEntity, DisambiguationConfig, DisambiguationError, DisambiguationOutcome,
    StageCounts, SHORT_ENTITY_LABELS, UNASSIGNED,
};

use crate::corpus::Domain;
use crate::tagging::EntityLabel;

/// One mention flowing through the stages. `original` is the surface as
/// tagged; `surface` is rewritten by each stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention {
    pub original: String,
    pub surface: String,
    pub label: EntityLabel,
    pub domain: Option<Domain>,
}

impl Mention {
    pub fn new(surface: impl Into<String>, label: EntityLabel, domain: Option<Domain>) -> Self {
        let surface = surface.into();
        Mention {
            original: surface.clone(),
            surface,
            label,
            domain,
        }
    }
}
