//! Contingency tables, the chi-square test of independence and Cramér's V.

use std::collections::BTreeMap;

use serde::Serialize;

use super::descriptive::CompensatedSum;
use super::special::chi_square_sf;
use super::StatsError;

/// Expected counts below this trigger the low-count warning.
pub const MIN_EXPECTED_WARNING: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContingencyTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

impl ContingencyTable {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        counts: Vec<Vec<u64>>,
    ) -> Result<Self, StatsError> {
        if counts.len() != row_labels.len() || counts.iter().any(|r| r.len() != col_labels.len()) {
            return Err(StatsError::Shape(format!(
                "{} row labels and {} column labels for a {}-row matrix",
                row_labels.len(),
                col_labels.len(),
                counts.len()
            )));
        }
        Ok(ContingencyTable { row_labels, col_labels, counts })
    }

    /// Table with numbered labels, handy for literals.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self, StatsError> {
        let rows = (0..counts.len()).map(|i| format!("r{i}")).collect();
        let cols = (0..counts.first().map_or(0, Vec::len)).map(|j| format!("c{j}")).collect();
        Self::new(rows, cols, counts)
    }

    /// Cross-tabulate `(row, column, count)` triples. Labels are sorted.
    pub fn from_triples<'a>(triples: impl IntoIterator<Item = (&'a str, &'a str, u64)>) -> Self {
        let mut cells: BTreeMap<(&str, &str), u64> = BTreeMap::new();
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for (r, c, n) in triples {
            *cells.entry((r, c)).or_default() += n;
            rows.insert(r, ());
            cols.insert(c, ());
        }
        let row_index: BTreeMap<&str, usize> = rows.keys().enumerate().map(|(i, k)| (*k, i)).collect();
        let col_index: BTreeMap<&str, usize> = cols.keys().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut counts = vec![vec![0; col_index.len()]; row_index.len()];
        for ((r, c), n) in cells {
            counts[row_index[r]][col_index[c]] += n;
        }
        ContingencyTable {
            row_labels: row_index.keys().map(|s| s.to_string()).collect(),
            col_labels: col_index.keys().map(|s| s.to_string()).collect(),
            counts,
        }
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols()).map(|j| self.counts.iter().map(|r| r[j]).sum()).collect()
    }

    /// Every cell multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        let mut t = self.clone();
        for c in t.counts.iter_mut().flatten() {
            *c *= k;
        }
        t
    }

    pub fn transposed(&self) -> Self {
        ContingencyTable {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            counts: (0..self.cols()).map(|j| self.counts.iter().map(|r| r[j]).collect()).collect(),
        }
    }

    /// The same table without rows and columns whose total is zero.
    pub fn without_empty_margins(&self) -> Self {
        let rs = self.row_sums();
        let cs = self.col_sums();
        let keep_r: Vec<usize> = (0..self.rows()).filter(|&i| rs[i] > 0).collect();
        let keep_c: Vec<usize> = (0..self.cols()).filter(|&j| cs[j] > 0).collect();
        ContingencyTable {
            row_labels: keep_r.iter().map(|&i| self.row_labels[i].clone()).collect(),
            col_labels: keep_c.iter().map(|&j| self.col_labels[j].clone()).collect(),
            counts: keep_r
                .iter()
                .map(|&i| keep_c.iter().map(|&j| self.counts[i][j]).collect())
                .collect(),
        }
    }

    fn check_testable(&self) -> Result<(), StatsError> {
        if self.rows() < 2 || self.cols() < 2 {
            return Err(StatsError::TooSmall { rows: self.rows(), cols: self.cols() });
        }
        if let Some(i) = self.row_sums().iter().position(|&s| s == 0) {
            return Err(StatsError::ZeroMarginal { axis: Axis::Row, label: self.row_labels[i].clone() });
        }
        if let Some(j) = self.col_sums().iter().position(|&s| s == 0) {
            return Err(StatsError::ZeroMarginal {
                axis: Axis::Column,
                label: self.col_labels[j].clone(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    /// `statistic / n`, computed from cell proportions so that it is
    /// bit-for-bit unchanged when every cell is multiplied by the same factor.
    pub phi_squared: f64,
    pub dof: u64,
    pub p_value: f64,
    pub n: u64,
    pub min_expected: f64,
    pub low_expected_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CramersVResult {
    pub v: f64,
    pub dof: u64,
}

/// Pearson's chi-square test of independence.
pub fn chi_square_independence(table: &ContingencyTable) -> Result<ChiSquareResult, StatsError> {
    table.check_testable()?;
    let n = table.n() as f64;
    // proportions: (k*a)/(k*b) rounds to the same value as a/b
    let rp: Vec<f64> = table.row_sums().iter().map(|&s| s as f64 / n).collect();
    let cp: Vec<f64> = table.col_sums().iter().map(|&s| s as f64 / n).collect();
    let mut phi2 = CompensatedSum::new();
    let mut min_share = f64::INFINITY;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &o) in row.iter().enumerate() {
            let e = rp[i] * cp[j];
            min_share = min_share.min(e);
            let d = o as f64 / n - e;
            phi2.add(d * d / e);
        }
    }
    let phi_squared = phi2.value().max(0.0);
    let statistic = phi_squared * n;
    let min_expected = min_share * n;
    let dof = ((table.rows() - 1) * (table.cols() - 1)) as u64;
    if min_expected < MIN_EXPECTED_WARNING {
        log::warn!("chi-square: smallest expected count {min_expected:.3} is below {MIN_EXPECTED_WARNING}");
    }
    Ok(ChiSquareResult {
        statistic,
        phi_squared,
        dof,
        p_value: chi_square_sf(statistic, dof as f64),
        n: table.n(),
        min_expected,
        low_expected_warning: min_expected < MIN_EXPECTED_WARNING,
    })
}

/// Cramér's V from an already computed chi-square result.
pub fn cramers_v_from(table: &ContingencyTable, chi: &ChiSquareResult) -> CramersVResult {
    let k = (table.rows().min(table.cols()) - 1) as u64;
    let v = (chi.phi_squared / k as f64).sqrt();
    CramersVResult { v: v.clamp(0.0, 1.0), dof: k }
}

pub fn cramers_v(table: &ContingencyTable) -> Result<CramersVResult, StatsError> {
    let chi = chi_square_independence(table)?;
    Ok(cramers_v_from(table, &chi))
}
