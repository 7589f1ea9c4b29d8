use std::collections::HashMap;

use super::Mention;
use crate::gazetteer::Gazetteer;
use crate::similarity::{ratio_chars, ratio_upper_bound};
use crate::tagging::EntityLabel;

/// Unified form for `surface`, if the gazetteer has one.
///
/// Full names are tried first (`ratio > name_threshold`), then
/// abbreviations (`ratio > abbrev_threshold`). The best-scoring entry wins;
/// equal scores go to the earlier row. A surface that already is a unified
/// form is returned unchanged, which keeps the rewrite idempotent.
pub fn gazetteer_form<'g>(
    surface: &str,
    gazetteer: &'g Gazetteer,
    name_threshold: u8,
    abbrev_threshold: u8,
) -> Option<&'g str> {
    if gazetteer.is_disambiguated_form(surface) {
        return None;
    }
    let s: Vec<char> = surface.chars().collect();
    let best = |candidates: &mut dyn Iterator<Item = (&'g str, &'g str)>, threshold: u8| {
        let mut best: Option<(u8, &'g str)> = None;
        for (key, form) in candidates {
            let floor = best.map_or(threshold, |(r, _)| r.max(threshold));
            let key_len = key.chars().count();
            if ratio_upper_bound(s.len(), key_len) <= floor {
                continue;
            }
            let k: Vec<char> = key.chars().collect();
            let r = ratio_chars(&s, &k);
            if r > floor {
                best = Some((r, form));
            }
        }
        best.map(|(_, f)| f)
    };
    let mut names = gazetteer
        .entries()
        .iter()
        .map(|e| (e.text.as_str(), e.disambiguated_form.as_str()));
    if let Some(form) = best(&mut names, name_threshold) {
        return Some(form);
    }
    let mut abbrs = gazetteer
        .abbreviations()
        .iter()
        .map(|(a, f)| (a.as_str(), f.as_str()));
    best(&mut abbrs, abbrev_threshold)
}

/// Rewrite the surfaces of mentions carrying one of `labels` to their
/// gazetteer form. Returns how many mentions changed.
pub fn canonicalize_against_gazetteer(
    mentions: &mut [Mention],
    labels: &[EntityLabel],
    gazetteer: &Gazetteer,
    name_threshold: u8,
    abbrev_threshold: u8,
) -> usize {
    if gazetteer.is_empty() {
        log::warn!("empty gazetteer, {:?} mentions left unchanged", labels);
        return 0;
    }
    let mut cache: HashMap<String, Option<String>> = HashMap::new();
    let mut changed = 0;
    for m in mentions.iter_mut().filter(|m| labels.contains(&m.label)) {
        let form = cache
            .entry(m.surface.clone())
            .or_insert_with(|| {
                gazetteer_form(&m.surface, gazetteer, name_threshold, abbrev_threshold).map(str::to_string)
            })
            .clone();
        if let Some(form) = form {
            m.surface = form;
            changed += 1;
        }
    }
    changed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gazetteer::GazetteerEntry;

    fn fund() -> Gazetteer {
        let rows = [
            ("National Science Foundation", "NSF", "National Science Foundation (NSF)"),
            ("Deutsche Forschungsgemeinschaft", "DFG", "Deutsche Forschungsgemeinschaft (DFG)"),
            ("German Research Foundation", "DFG", "Deutsche Forschungsgemeinschaft (DFG)"),
        ];
        Gazetteer::from_entries(
            rows.iter()
                .map(|(t, a, f)| GazetteerEntry {
                    text: t.to_string(),
                    abbreviation: a.to_string(),
                    disambiguated_form: f.to_string(),
                })
                .collect(),
        )
    }

    fn form(s: &str) -> Option<String> {
        gazetteer_form(s, &fund(), 93, 99).map(str::to_string)
    }

    #[test]
    fn name_and_abbreviation_matches() {
        assert_eq!(form("National Science Foundation").as_deref(), Some("National Science Foundation (NSF)"));
        assert_eq!(form("NSF").as_deref(), Some("National Science Foundation (NSF)"));
        assert_eq!(form("German Research Foundation").as_deref(), Some("Deutsche Forschungsgemeinschaft (DFG)"));
        // one dropped letter: ratio 98
        assert_eq!(form("National Science Fondation").as_deref(), Some("National Science Foundation (NSF)"));
    }

    #[test]
    fn case_sensitive_abbreviation() {
        assert_eq!(form("nsf"), None);
    }

    #[test]
    fn unified_forms_are_fixed_points() {
        assert_eq!(form("National Science Foundation (NSF)"), None);
        assert_eq!(form("Unrelated Trust"), None);
    }

    #[test]
    fn only_selected_labels_are_rewritten() {
        let mut ms = vec![
            Mention::new("NSF", EntityLabel::Fund, None),
            Mention::new("NSF", EntityLabel::Cor, None),
            Mention::new("NSF", EntityLabel::Misc, None),
        ];
        let n = canonicalize_against_gazetteer(&mut ms, &[EntityLabel::Fund, EntityLabel::Misc], &fund(), 93, 99);
        assert_eq!(n, 2);
        assert_eq!(ms[1].surface, "NSF");
        assert_eq!(ms[2].surface, "National Science Foundation (NSF)");
        assert_eq!(ms[2].original, "NSF");
    }

    #[test]
    fn empty_gazetteer_passes_through() {
        let mut ms = vec![Mention::new("NSF", EntityLabel::Fund, None)];
        assert_eq!(canonicalize_against_gazetteer(&mut ms, &[EntityLabel::Fund], &Gazetteer::default(), 93, 99), 0);
        assert_eq!(ms[0].surface, "NSF");
    }
}
