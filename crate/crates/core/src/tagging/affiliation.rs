use super::label::EntityLabel;
use super::span::EntitySpan;

pub const DEFAULT_LINK_WINDOW: usize = 60;

/// A person together with the closest university or corporation mentioned
/// near it, if any lies within the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffiliationLink {
    pub person: EntitySpan,
    pub affiliation: Option<EntitySpan>,
}

/// Pair every IND span with the nearest UNI or COR span of the same record.
///
/// Distance is the number of characters between the two spans. Candidates
/// farther than `window` are ignored; on equal distance the span to the right
/// wins.
pub fn link_person_affiliation(spans: &[EntitySpan], window: usize) -> Vec<AffiliationLink> {
    spans
        .iter()
        .filter(|s| s.label == EntityLabel::Ind)
        .map(|person| {
            let affiliation = spans
                .iter()
                .filter(|a| {
                    a.record_id == person.record_id && matches!(a.label, EntityLabel::Uni | EntityLabel::Cor)
                })
                .filter_map(|a| {
                    let (gap, right) = if a.start >= person.end {
                        (a.start - person.end, true)
                    } else if a.end <= person.start {
                        (person.start - a.end, false)
                    } else {
                        return None;
                    };
                    (gap <= window).then_some((gap, !right, a))
                })
                .min_by_key(|(gap, left, a)| (*gap, *left, a.start))
                .map(|(_, _, a)| a.clone());
            AffiliationLink {
                person: person.clone(),
                affiliation,
            }
        })
        .collect()
}
