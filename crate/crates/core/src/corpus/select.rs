use std::collections::BTreeSet;

use rand::seq::index;

use super::normalize_key;
use super::record::{CorpusRecord, Domain};
use crate::seed::stage_rng;

/// Year, language and document-type restriction applied before sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusFilter {
    year_min: i32,
    year_max: i32,
    languages: BTreeSet<String>,
    doc_types: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelectError {
    #[error("year_min {0} is greater than year_max {1}")]
    YearRange(i32, i32),
    #[error("filter needs at least one {0}")]
    EmptySet(&'static str),
    #[error("sample size must be positive")]
    ZeroSample,
}

impl CorpusFilter {
    pub fn new<L, D>(year_min: i32, year_max: i32, languages: L, doc_types: D) -> Result<Self, SelectError>
    where
        L: IntoIterator,
        L::Item: AsRef<str>,
        D: IntoIterator,
        D::Item: AsRef<str>,
    {
        if year_min > year_max {
            return Err(SelectError::YearRange(year_min, year_max));
        }
        let languages: BTreeSet<_> = languages.into_iter().map(|s| normalize_key(s.as_ref())).collect();
        let doc_types: BTreeSet<_> = doc_types.into_iter().map(|s| normalize_key(s.as_ref())).collect();
        if languages.is_empty() {
            return Err(SelectError::EmptySet("language"));
        }
        if doc_types.is_empty() {
            return Err(SelectError::EmptySet("document type"));
        }
        Ok(CorpusFilter {
            year_min,
            year_max,
            languages,
            doc_types,
        })
    }

    /// English articles and reviews from 2014 to 2019.
    pub fn default_study() -> Self {
        Self::new(2014, 2019, ["English"], ["Article", "Review"]).expect("valid")
    }

    pub fn year_range(&self) -> (i32, i32) {
        (self.year_min, self.year_max)
    }

    pub fn accepts(&self, r: &CorpusRecord) -> bool {
        (self.year_min..=self.year_max).contains(&r.year)
            && self.languages.contains(&normalize_key(&r.language))
            && self.doc_types.contains(&normalize_key(&r.doc_type))
            && r.domain.is_some()
    }
}

pub fn filter_records(records: Vec<CorpusRecord>, filter: &CorpusFilter) -> Vec<CorpusRecord> {
    records.into_iter().filter(|r| filter.accepts(r)).collect()
}

/// Draw up to `n` records per domain uniformly without replacement.
///
/// Each domain has its own random stream derived from `seed`, and selected
/// records keep their relative input order. Unassigned records are dropped.
pub fn sample_per_domain(records: Vec<CorpusRecord>, n: usize, seed: u64) -> Result<Vec<CorpusRecord>, SelectError> {
    if n == 0 {
        return Err(SelectError::ZeroSample);
    }
    let mut keep = vec![false; records.len()];
    for domain in Domain::ALL {
        let members: Vec<usize> = records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.domain == Some(domain))
            .map(|(i, _)| i)
            .collect();
        if members.len() <= n {
            for i in members {
                keep[i] = true;
            }
            continue;
        }
        let mut rng = stage_rng(seed, &format!("sample/{}", domain.as_str()));
        for pick in index::sample(&mut rng, members.len(), n) {
            keep[members[pick]] = true;
        }
    }
    Ok(records
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect())
}
