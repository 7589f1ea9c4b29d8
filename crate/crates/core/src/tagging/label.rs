use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The six categories of acknowledged entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum EntityLabel {
    /// funding organisation
    Fund,
    /// grant number
    Grnb,
    /// individual
    Ind,
    /// corporation
    Cor,
    /// university
    Uni,
    Misc,
}

impl EntityLabel {
    pub const ALL: [EntityLabel; 6] = [
        EntityLabel::Fund,
        EntityLabel::Grnb,
        EntityLabel::Ind,
        EntityLabel::Cor,
        EntityLabel::Uni,
        EntityLabel::Misc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntityLabel::Fund => "FUND",
            EntityLabel::Grnb => "GRNB",
            EntityLabel::Ind => "IND",
            EntityLabel::Cor => "COR",
            EntityLabel::Uni => "UNI",
            EntityLabel::Misc => "MISC",
        }
    }

    /// Overlap precedence of the baseline tagger, lower wins.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            EntityLabel::Fund => 0,
            EntityLabel::Uni => 1,
            EntityLabel::Cor => 2,
            EntityLabel::Grnb => 3,
            EntityLabel::Ind => 4,
            EntityLabel::Misc => 5,
        }
    }
}

impl fmt::Display for EntityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown entity label {0:?}")]
pub struct UnknownLabel(pub String);

impl FromStr for EntityLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

impl TryFrom<String> for EntityLabel {
    type Error = UnknownLabel;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<EntityLabel> for &'static str {
    fn from(l: EntityLabel) -> Self {
        l.as_str()
    }
}
