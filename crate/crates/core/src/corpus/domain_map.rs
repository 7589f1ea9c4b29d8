use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use super::normalize_key;
use super::record::{CorpusRecord, Domain};

const BUILTIN: &str = include_str!("../../data/domain_map.csv");

#[derive(Debug, thiserror::Error)]
pub enum DomainMapError {
    #[error("domain map: {0}")]
    Csv(#[from] csv::Error),
    #[error("domain map: expected header \"classification,domain\", found {0:?}")]
    Header(String),
    #[error("domain map line {line}: {source}")]
    Domain {
        line: u64,
        source: super::record::UnknownDomain,
    },
    #[error("domain map line {line}: discipline {discipline:?} already mapped to {existing}")]
    Conflict {
        line: u64,
        discipline: String,
        existing: Domain,
    },
    #[error("domain map {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Discipline name to domain lookup. Keys are compared case-insensitively
/// with internal whitespace collapsed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DomainMap {
    entries: HashMap<String, Domain>,
}

impl DomainMap {
    /// The 28 WoS disciplines grouped into the four domains.
    pub fn builtin() -> Self {
        Self::from_reader(BUILTIN.as_bytes()).expect("builtin domain map is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, DomainMapError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| DomainMapError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_reader(file)
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, DomainMapError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.len() != 2 || &header[0] != "classification" || &header[1] != "domain" {
            return Err(DomainMapError::Header(header.iter().collect::<Vec<_>>().join(",")));
        }
        let mut map = DomainMap::default();
        for row in rdr.records() {
            let row = row?;
            let line = row.position().map(|p| p.line()).unwrap_or(0);
            let domain: Domain = row[1]
                .parse()
                .map_err(|source| DomainMapError::Domain { line, source })?;
            let key = normalize_key(&row[0]);
            if let Some(&existing) = map.entries.get(&key) {
                if existing != domain {
                    return Err(DomainMapError::Conflict {
                        line,
                        discipline: row[0].to_string(),
                        existing,
                    });
                }
            }
            map.entries.insert(key, domain);
        }
        Ok(map)
    }

    pub fn insert(&mut self, discipline: &str, domain: Domain) {
        self.entries.insert(normalize_key(discipline), domain);
    }

    pub fn lookup(&self, discipline: &str) -> Option<Domain> {
        self.entries.get(&normalize_key(discipline)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Assign each record the domain of its first mapped category. Records with
/// no mapped category are left unassigned.
pub fn map_disciplines(mut records: Vec<CorpusRecord>, map: &DomainMap) -> Vec<CorpusRecord> {
    for r in &mut records {
        r.domain = r.categories.iter().find_map(|c| map.lookup(c));
    }
    records
}
