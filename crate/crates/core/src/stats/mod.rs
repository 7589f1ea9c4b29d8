//! Descriptive statistics, contingency tests, correlation and variance
//! analysis, and the corpus-level tables built from them.

pub mod analysis;
pub mod contingency;
pub mod correlation;
pub mod descriptive;
pub mod special;

pub use analysis::{
    anova_by_domain, bootstrap_median_ci, entity_domain_table, entity_label_table, frequency_by_type_domain,
    length_stats, mean_std_all_papers, mean_std_per_paper, pearson_matrix, rank_frequency, record_lengths,
    record_variables, top_k, yearly_trends, GroupSummary, LengthSummary, RankedEntity, RecordVariables,
    TrendMetric, TrendPoint, VariableAnova,
};
pub use contingency::{
    chi_square_independence, cramers_v, cramers_v_from, Axis, ChiSquareResult, ContingencyTable, CramersVResult,
};
pub use correlation::{correlation_matrix, one_way_anova, pearson, z_scores, AnovaResult, CorrelationMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    #[error("{axis} {label:?} has a zero total")]
    ZeroMarginal { axis: Axis, label: String },
    #[error("table is {rows}x{cols}; a test needs at least 2 rows and 2 columns")]
    TooSmall { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("anova: {0}")]
    Anova(String),
    #[error("k must be at least 1")]
    InvalidK,
}
