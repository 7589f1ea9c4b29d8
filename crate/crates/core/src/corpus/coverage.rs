use serde::Serialize;

use super::record::{CorpusRecord, Domain};

/// Funding-information coverage of one domain. Percentages are `None` when
/// their denominator is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageRow {
    pub domain: Domain,
    pub article_count: u64,
    pub with_ack_text: u64,
    pub with_funding_index: u64,
    pub pct_with_ack_text: Option<f64>,
    pub pct_of_those_with_funding_index: Option<f64>,
}

fn pct(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| 100.0 * num as f64 / den as f64)
}

/// One row per domain, in [`Domain::ALL`] order. The funding-index share is
/// taken over records that have an acknowledgement text.
pub fn coverage_stats(records: &[CorpusRecord]) -> Vec<CoverageRow> {
    Domain::ALL
        .into_iter()
        .map(|domain| {
            let in_domain = records.iter().filter(|r| r.domain == Some(domain));
            let (mut total, mut ack, mut funded) = (0u64, 0u64, 0u64);
            for r in in_domain {
                total += 1;
                if r.has_ack_text() {
                    ack += 1;
                    if r.has_funding_index() {
                        funded += 1;
                    }
                }
            }
            CoverageRow {
                domain,
                article_count: total,
                with_ack_text: ack,
                with_funding_index: funded,
                pct_with_ack_text: pct(ack, total),
                pct_of_those_with_funding_index: pct(funded, ack),
            }
        })
        .collect()
}
