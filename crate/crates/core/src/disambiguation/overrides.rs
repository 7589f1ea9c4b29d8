use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::Mention;
use crate::tagging::EntityLabel;

/// Relabel every mention whose surface is `surface` and whose label is
/// `from_label`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct OverrideRule {
    pub surface: String,
    pub from_label: EntityLabel,
    pub to_label: EntityLabel,
}

#[derive(Debug, thiserror::Error)]
pub enum OverrideError {
    #[error("overrides {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("overrides: {0}")]
    Csv(#[from] csv::Error),
    #[error("overrides: expected header \"surface,from_label,to_label\", found {0:?}")]
    Header(String),
    #[error("override for {surface:?} maps {label} onto itself")]
    Identity { surface: String, label: EntityLabel },
    #[error("conflicting overrides for {surface:?} {from}: {first} vs {second}")]
    Conflict {
        surface: String,
        from: EntityLabel,
        first: EntityLabel,
        second: EntityLabel,
    },
}

/// A validated rule set: at most one target per `(surface, from_label)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OverrideSet {
    rules: BTreeMap<(String, EntityLabel), EntityLabel>,
}

impl OverrideSet {
    pub fn new(rules: impl IntoIterator<Item = OverrideRule>) -> Result<Self, OverrideError> {
        let mut set = OverrideSet::default();
        for r in rules {
            if r.from_label == r.to_label {
                return Err(OverrideError::Identity {
                    surface: r.surface,
                    label: r.from_label,
                });
            }
            let key = (r.surface.clone(), r.from_label);
            match set.rules.get(&key) {
                Some(&existing) if existing != r.to_label => {
                    return Err(OverrideError::Conflict {
                        surface: r.surface,
                        from: r.from_label,
                        first: existing,
                        second: r.to_label,
                    })
                }
                _ => {
                    set.rules.insert(key, r.to_label);
                }
            }
        }
        Ok(set)
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, OverrideError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["surface", "from_label", "to_label"] {
            return Err(OverrideError::Header(header.iter().collect::<Vec<_>>().join(",")));
        }
        let rules = rdr.deserialize::<OverrideRule>().collect::<Result<Vec<_>, _>>()?;
        Self::new(rules)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, OverrideError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| OverrideError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_reader(file)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn target(&self, surface: &str, label: EntityLabel) -> Option<EntityLabel> {
        self.rules.get(&(surface.to_string(), label)).copied()
    }
}

/// Apply `rules` in place; returns the number of relabelled mentions.
pub fn apply_overrides(mentions: &mut [Mention], rules: &OverrideSet) -> usize {
    let mut n = 0;
    for m in mentions.iter_mut() {
        if let Some(to) = rules.target(&m.surface, m.label) {
            m.label = to;
            n += 1;
        }
    }
    n
}
