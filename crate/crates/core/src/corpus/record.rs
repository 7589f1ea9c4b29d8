use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the four scientific domains a record can be assigned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "oceanography")]
    Oceanography,
    #[serde(rename = "economics")]
    Economics,
    #[serde(rename = "social sciences")]
    SocialSciences,
    #[serde(rename = "computer science")]
    ComputerScience,
}

impl Domain {
    pub const ALL: [Domain; 4] = [
        Domain::Oceanography,
        Domain::Economics,
        Domain::SocialSciences,
        Domain::ComputerScience,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Oceanography => "oceanography",
            Domain::Economics => "economics",
            Domain::SocialSciences => "social sciences",
            Domain::ComputerScience => "computer science",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown domain {0:?}")]
pub struct UnknownDomain(pub String);

impl FromStr for Domain {
    type Err = UnknownDomain;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = crate::corpus::normalize_key(s);
        Domain::ALL
            .into_iter()
            .find(|d| d.as_str() == norm)
            .ok_or_else(|| UnknownDomain(s.to_string()))
    }
}

/// A single publication as read from a field-tagged export.
///
/// Serialized as one JSON object per line in the canonical corpus file; the
/// field names here are the on-disk names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub record_id: String,
    pub year: i32,
    #[serde(default)]
    pub language: String,
    #[serde(default)]
    pub doc_type: String,
    #[serde(default)]
    pub categories: Vec<String>,
    #[serde(default)]
    pub domain: Option<Domain>,
    #[serde(default)]
    pub ack_text: Option<String>,
    #[serde(default)]
    pub funding_orgs: Vec<String>,
    #[serde(default)]
    pub grant_numbers: Vec<String>,
    #[serde(default)]
    pub citation_count: u64,
}

impl CorpusRecord {
    pub fn new(record_id: impl Into<String>, year: i32) -> Self {
        CorpusRecord {
            record_id: record_id.into(),
            year,
            language: String::new(),
            doc_type: String::new(),
            categories: Vec::new(),
            domain: None,
            ack_text: None,
            funding_orgs: Vec::new(),
            grant_numbers: Vec::new(),
            citation_count: 0,
        }
    }

    pub fn has_ack_text(&self) -> bool {
        self.ack_text.is_some()
    }

    pub fn has_funding_index(&self) -> bool {
        !self.funding_orgs.is_empty() || !self.grant_numbers.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_names_round_trip() {
        for d in Domain::ALL {
            assert_eq!(d.as_str().parse::<Domain>().unwrap(), d);
            let json = serde_json::to_string(&d).unwrap();
            assert_eq!(json, format!("\"{}\"", d.as_str()));
        }
        assert_eq!(" Social   Sciences ".parse::<Domain>().unwrap(), Domain::SocialSciences);
        assert!("physics".parse::<Domain>().is_err());
    }

    #[test]
    fn record_json_field_names() {
        let mut r = CorpusRecord::new("W1", 2015);
        r.domain = Some(Domain::Economics);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in [
            "record_id",
            "year",
            "language",
            "doc_type",
            "categories",
            "domain",
            "ack_text",
            "funding_orgs",
            "grant_numbers",
            "citation_count",
        ] {
            assert!(keys.iter().any(|x| x == k), "missing {k}");
        }
        assert_eq!(v["domain"], "economics");
        assert!(v["ack_text"].is_null());
    }
}
