//! Curated name lists: `text,abbreviation,disambiguated_form` rows.
//!
//! The same file drives both the baseline tagger (as a dictionary of surface
//! forms) and canonicalization (as the source of unified writing variants).

use std::collections::{BTreeSet, HashMap};
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GazetteerEntry {
    pub text: String,
    pub abbreviation: String,
    pub disambiguated_form: String,
}

#[derive(Debug, thiserror::Error)]
pub enum GazetteerError {
    #[error("gazetteer {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("gazetteer: {0}")]
    Csv(#[from] csv::Error),
    #[error("gazetteer: expected header \"text,abbreviation,disambiguated_form\", found {0:?}")]
    Header(String),
    #[error("gazetteer line {0}: disambiguated_form is empty")]
    EmptyForm(u64),
}

/// A loaded gazetteer.
///
/// An abbreviation that points at more than one disambiguated form is
/// ambiguous (two different organisations share it) and is removed from every
/// row that carries it; the rows themselves stay for their full names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Gazetteer {
    entries: Vec<GazetteerEntry>,
    abbreviations: Vec<(String, String)>,
    dropped: Vec<String>,
}

impl Gazetteer {
    pub fn from_entries(entries: Vec<GazetteerEntry>) -> Self {
        let mut forms: HashMap<&str, BTreeSet<&str>> = HashMap::new();
        for e in &entries {
            if !e.abbreviation.is_empty() {
                forms
                    .entry(e.abbreviation.as_str())
                    .or_default()
                    .insert(e.disambiguated_form.as_str());
            }
        }
        let ambiguous: BTreeSet<String> = forms
            .iter()
            .filter(|(_, f)| f.len() > 1)
            .map(|(a, _)| a.to_string())
            .collect();

        let mut entries = entries;
        for e in &mut entries {
            if ambiguous.contains(&e.abbreviation) {
                e.abbreviation.clear();
            }
        }
        let mut seen = BTreeSet::new();
        let abbreviations = entries
            .iter()
            .filter(|e| !e.abbreviation.is_empty() && seen.insert(e.abbreviation.clone()))
            .map(|e| (e.abbreviation.clone(), e.disambiguated_form.clone()))
            .collect();
        Gazetteer {
            entries,
            abbreviations,
            dropped: ambiguous.into_iter().collect(),
        }
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, GazetteerError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["text", "abbreviation", "disambiguated_form"] {
            return Err(GazetteerError::Header(header.iter().collect::<Vec<_>>().join(",")));
        }
        let mut entries = Vec::new();
        for row in rdr.deserialize::<GazetteerEntry>() {
            let e = row?;
            if e.disambiguated_form.is_empty() {
                return Err(GazetteerError::EmptyForm(entries.len() as u64 + 2));
            }
            entries.push(e);
        }
        Ok(Self::from_entries(entries))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, GazetteerError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| GazetteerError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_reader(file)
    }

    pub fn entries(&self) -> &[GazetteerEntry] {
        &self.entries
    }

    /// Unique abbreviations with their form, in file order.
    pub fn abbreviations(&self) -> &[(String, String)] {
        &self.abbreviations
    }

    /// Abbreviations removed at load because they were ambiguous.
    pub fn dropped_abbreviations(&self) -> &[String] {
        &self.dropped
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_disambiguated_form(&self, s: &str) -> bool {
        self.entries.iter().any(|e| e.disambiguated_form == s)
    }

    /// Every distinct string a mention of a listed entity may appear as.
    pub fn surface_forms(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .flat_map(|e| [e.text.as_str(), e.abbreviation.as_str(), e.disambiguated_form.as_str()])
            .filter(|s| !s.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "text,abbreviation,disambiguated_form
Deutsches Klimarechenzentrum,DKRZ,German Climate Computer Center (DKRZ)
German Climate Computer Center,DKRZ,German Climate Computer Center (DKRZ)
German Computing Center,DKRZ,German Climate Computer Center (DKRZ)
UC Berkeley,UCB,\"University of California, Berkeley (UCB)\"
\"University of California, Berkeley\",UCB,\"University of California, Berkeley (UCB)\"
Australia Awards Scholarship,AAS,Australia Awards Scholarship (AAS)
African Academy of Sciences,AAS,African Academy of Sciences (AAS)
";

    #[test]
    fn shared_abbreviation_of_one_entity_is_kept() {
        let g = Gazetteer::from_reader(TABLE.as_bytes()).unwrap();
        assert_eq!(g.entries().len(), 7);
        let abbrs: Vec<_> = g.abbreviations().iter().map(|(a, _)| a.as_str()).collect();
        assert_eq!(abbrs, vec!["DKRZ", "UCB"]);
    }

    #[test]
    fn ambiguous_abbreviation_is_dropped() {
        let g = Gazetteer::from_reader(TABLE.as_bytes()).unwrap();
        assert_eq!(g.dropped_abbreviations(), ["AAS"]);
        assert!(g.entries()[5].abbreviation.is_empty());
        assert_eq!(g.entries()[5].text, "Australia Awards Scholarship");
    }

    #[test]
    fn header_and_empty_form_rejected() {
        assert!(matches!(
            Gazetteer::from_reader("name,abbr,form\n".as_bytes()),
            Err(GazetteerError::Header(_))
        ));
        assert!(matches!(
            Gazetteer::from_reader("text,abbreviation,disambiguated_form\nX,Y,\n".as_bytes()),
            Err(GazetteerError::EmptyForm(2))
        ));
    }
}
