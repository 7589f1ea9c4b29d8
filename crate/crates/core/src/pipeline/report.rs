//! Report bundle layout: `tables/*.csv` with JSON mirrors, and `plots/*.csv`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};

use super::stages::AnalysisReport;
use super::PipelineError;
use crate::corpus::Domain;
use crate::stats::{
    chi_square_independence, cramers_v_from, ChiSquareResult, ContingencyTable, CramersVResult,
};
use crate::tagging::EntityLabel;

/// Chi-square test and Cramér's V for one pair of variables. Rows and
/// columns with a zero total are removed before testing.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationTest {
    pub variables: String,
    pub rows: usize,
    pub cols: usize,
    pub chi_square: Result<ChiSquareResult, String>,
    pub cramers_v: Option<CramersVResult>,
}

pub(crate) fn association_test(variables: &str, table: &ContingencyTable) -> AssociationTest {
    let t = table.without_empty_margins();
    let chi = chi_square_independence(&t).map_err(|e| e.to_string());
    let v = chi.as_ref().ok().map(|c| cramers_v_from(&t, c));
    AssociationTest {
        variables: variables.to_string(),
        rows: t.rows(),
        cols: t.cols(),
        chi_square: chi,
        cramers_v: v,
    }
}

/// Finite numbers as numbers, infinities as `"inf"`/`"-inf"`, missing as
/// empty (CSV) or null (JSON).
fn real<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) if x.is_infinite() => s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" }),
        Some(x) => s.serialize_f64(*x),
    }
}

#[derive(Serialize)]
struct FrequencyRow {
    label: String,
    oceanography: u64,
    economics: u64,
    #[serde(rename = "social sciences")]
    social_sciences: u64,
    #[serde(rename = "computer science")]
    computer_science: u64,
    total: u64,
}

#[derive(Serialize)]
struct MeanStdRow {
    domain: Domain,
    label: EntityLabel,
    population: &'static str,
    n: usize,
    mean: f64,
    std: f64,
}

#[derive(Serialize)]
struct TopRow<'a> {
    domain: Domain,
    label: EntityLabel,
    rank: usize,
    canonical: &'a str,
    count: u64,
}

#[derive(Serialize)]
struct ChiSquareRow<'a> {
    variables: &'a str,
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "real")]
    statistic: Option<f64>,
    #[serde(serialize_with = "real")]
    p_value: Option<f64>,
    dof: Option<u64>,
    n: Option<u64>,
    #[serde(serialize_with = "real")]
    min_expected: Option<f64>,
    low_expected_warning: Option<bool>,
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct CramersVRow<'a> {
    variables: &'a str,
    #[serde(serialize_with = "real")]
    v: Option<f64>,
    dof: Option<u64>,
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct PearsonRow<'a> {
    variable_a: &'a str,
    variable_b: &'a str,
    n: usize,
    #[serde(serialize_with = "real")]
    r: Option<f64>,
    #[serde(serialize_with = "real")]
    p_value: Option<f64>,
}

#[derive(Serialize)]
struct AnovaRow<'a> {
    variable: &'a str,
    groups: String,
    #[serde(serialize_with = "real")]
    f_statistic: Option<f64>,
    dof_between: Option<u64>,
    dof_within: Option<u64>,
    #[serde(serialize_with = "real")]
    p_value: Option<f64>,
    #[serde(serialize_with = "real")]
    ss_between: Option<f64>,
    #[serde(serialize_with = "real")]
    ss_within: Option<f64>,
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct RankRow {
    domain: Domain,
    label: EntityLabel,
    rank: usize,
    count: u64,
}

struct Bundle {
    root: PathBuf,
    written: Vec<PathBuf>,
}

impl Bundle {
    fn write_csv<T: Serialize>(&mut self, rel: &str, rows: &[T]) -> Result<(), PipelineError> {
        let path = self.root.join(rel);
        let mut w = csv::Writer::from_path(&path).map_err(|e| PipelineError::io(&path, e))?;
        for r in rows {
            w.serialize(r).map_err(|e| PipelineError::io(&path, e))?;
        }
        w.flush().map_err(|e| PipelineError::io(&path, e))?;
        self.written.push(PathBuf::from(rel));
        Ok(())
    }

    fn write_json<T: Serialize + ?Sized>(&mut self, rel: &str, value: &T) -> Result<(), PipelineError> {
        let path = self.root.join(rel);
        let mut text = serde_json::to_string_pretty(value).map_err(|e| PipelineError::io(&path, e))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| PipelineError::io(&path, e))?;
        self.written.push(PathBuf::from(rel));
        Ok(())
    }

    fn table<T: Serialize>(&mut self, name: &str, rows: &[T]) -> Result<(), PipelineError> {
        self.write_csv(&format!("tables/{name}.csv"), rows)?;
        self.write_json(&format!("tables/{name}.json"), rows)
    }
}

/// Write the nine tables and two plot-data files under `dir`. Returns the
/// written paths relative to `dir`.
pub fn write_report(dir: &Path, report: &AnalysisReport) -> Result<Vec<PathBuf>, PipelineError> {
    for sub in ["tables", "plots"] {
        let p = dir.join(sub);
        fs::create_dir_all(&p).map_err(|e| PipelineError::io(&p, e))?;
    }
    let mut b = Bundle { root: dir.to_path_buf(), written: Vec::new() };

    b.table("coverage", &report.coverage)?;

    let t = &report.frequency;
    let mut freq: Vec<FrequencyRow> = t
        .row_labels()
        .iter()
        .zip(t.counts())
        .map(|(l, c)| FrequencyRow {
            label: l.clone(),
            oceanography: c[0],
            economics: c[1],
            social_sciences: c[2],
            computer_science: c[3],
            total: c.iter().sum(),
        })
        .collect();
    let cs = t.col_sums();
    freq.push(FrequencyRow {
        label: "total".into(),
        oceanography: cs[0],
        economics: cs[1],
        social_sciences: cs[2],
        computer_science: cs[3],
        total: t.n(),
    });
    b.table("entity_frequency", &freq)?;

    let mean_std: Vec<MeanStdRow> = [("with_label", &report.per_paper), ("all_papers", &report.all_papers)]
        .into_iter()
        .flat_map(|(pop, rows)| {
            rows.iter().map(move |g| MeanStdRow {
                domain: g.domain,
                label: g.label,
                population: pop,
                n: g.n,
                mean: g.mean,
                std: g.std,
            })
        })
        .collect();
    b.table("mean_std_per_paper", &mean_std)?;

    let top: Vec<TopRow> = report
        .top
        .iter()
        .flat_map(|(d, l, v)| {
            v.iter().map(move |r| TopRow {
                domain: *d,
                label: *l,
                rank: r.rank,
                canonical: &r.canonical,
                count: r.count,
            })
        })
        .collect();
    b.table("top_entities", &top)?;

    b.table("length_stats", &report.lengths)?;

    let chi: Vec<ChiSquareRow> = report
        .associations
        .iter()
        .map(|a| {
            let c = a.chi_square.as_ref().ok();
            ChiSquareRow {
                variables: &a.variables,
                rows: a.rows,
                cols: a.cols,
                statistic: c.map(|c| c.statistic),
                p_value: c.map(|c| c.p_value),
                dof: c.map(|c| c.dof),
                n: c.map(|c| c.n),
                min_expected: c.map(|c| c.min_expected),
                low_expected_warning: c.map(|c| c.low_expected_warning),
                error: a.chi_square.as_ref().err().map(String::as_str),
            }
        })
        .collect();
    b.table("chi_square", &chi)?;

    let cv: Vec<CramersVRow> = report
        .associations
        .iter()
        .map(|a| CramersVRow {
            variables: &a.variables,
            v: a.cramers_v.as_ref().map(|v| v.v),
            dof: a.cramers_v.as_ref().map(|v| v.dof),
            error: a.chi_square.as_ref().err().map(String::as_str),
        })
        .collect();
    b.table("cramers_v", &cv)?;

    let m = &report.pearson;
    let mut pearson = Vec::new();
    for i in 0..m.variables.len() {
        for j in 0..m.variables.len() {
            pearson.push(PearsonRow {
                variable_a: &m.variables[i],
                variable_b: &m.variables[j],
                n: m.n,
                r: m.r[i][j],
                p_value: m.p_value[i][j],
            });
        }
    }
    b.table("pearson", &pearson)?;

    let anova: Vec<AnovaRow> = report
        .anova
        .iter()
        .map(|a| {
            let r = a.result.as_ref().ok();
            AnovaRow {
                variable: &a.variable,
                groups: a.groups.iter().map(|d| d.as_str()).collect::<Vec<_>>().join(";"),
                f_statistic: r.and_then(|r| r.f_statistic),
                dof_between: r.map(|r| r.dof_between),
                dof_within: r.map(|r| r.dof_within),
                p_value: r.and_then(|r| r.p_value),
                ss_between: r.map(|r| r.ss_between),
                ss_within: r.map(|r| r.ss_within),
                error: a.result.as_ref().err().map(String::as_str),
            }
        })
        .collect();
    b.table("anova", &anova)?;

    let ranks: Vec<RankRow> = report
        .rank_frequency
        .iter()
        .flat_map(|(d, l, v)| v.iter().map(move |&(rank, count)| RankRow { domain: *d, label: *l, rank, count }))
        .collect();
    b.write_csv("plots/rank_frequency.csv", &ranks)?;
    b.write_csv("plots/yearly_trends.csv", &report.trends)?;

    Ok(b.written)
}
