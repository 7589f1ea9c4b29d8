//! Acknowledgement mining: read field-tagged bibliographic exports, tag the
//! entities thanked in acknowledgement texts, merge their writing variants
//! and run the contingency and correlation analyses over the result.

pub mod corpus;
pub mod disambiguation;
pub mod gazetteer;
pub mod pipeline;
pub mod seed;
pub mod similarity;
pub mod stats;
pub mod tagging;
pub mod text;

pub use corpus::{CorpusRecord, Domain};
pub use tagging::{EntityLabel, EntitySpan};
