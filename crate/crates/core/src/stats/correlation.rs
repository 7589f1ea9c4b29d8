//! Pearson correlation and one-way analysis of variance.

use serde::Serialize;

use super::descriptive::{mean, sample_std, CompensatedSum};
use super::special::{f_sf, pearson_p_value};
use super::StatsError;

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|x| *x == v[0])
}

/// Pearson's r, or `None` when either variable has zero variance or there are
/// fewer than two observations.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "pearson needs paired observations");
    if x.len() < 2 || is_constant(x) || is_constant(y) {
        return None;
    }
    let mx = mean(x)?;
    let my = mean(y)?;
    let mut sxy = CompensatedSum::new();
    let mut sxx = CompensatedSum::new();
    let mut syy = CompensatedSum::new();
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    Some((sxy.value() / (sxx.value() * syy.value()).sqrt()).clamp(-1.0, 1.0))
}

/// Values shifted to mean 0 and scaled to sample std 1. Constant input is
/// returned unchanged.
pub fn z_scores(v: &[f64]) -> Vec<f64> {
    match (mean(v), sample_std(v)) {
        (Some(m), Some(s)) if s > 0.0 && !is_constant(v) => v.iter().map(|x| (x - m) / s).collect(),
        _ => v.to_vec(),
    }
}

/// Symmetric correlation matrix over named variables. A zero-variance
/// variable has `None` in its whole row and column, diagonal included.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub variables: Vec<String>,
    pub n: usize,
    pub r: Vec<Vec<Option<f64>>>,
    pub p_value: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.variables.iter().position(|v| v == a)?;
        let j = self.variables.iter().position(|v| v == b)?;
        self.r[i][j]
    }
}

/// Pairwise Pearson correlations between equally long columns, computed on
/// z-scored data when `normalize` is set.
pub fn correlation_matrix(columns: &[(String, Vec<f64>)], normalize: bool) -> Result<CorrelationMatrix, StatsError> {
    let n = columns.first().map_or(0, |c| c.1.len());
    if let Some((name, c)) = columns.iter().find(|c| c.1.len() != n) {
        return Err(StatsError::Shape(format!("variable {name} has {} values, expected {n}", c.len())));
    }
    let data: Vec<Vec<f64>> = columns
        .iter()
        .map(|(_, v)| if normalize { z_scores(v) } else { v.clone() })
        .collect();
    let k = columns.len();
    let mut r = vec![vec![None; k]; k];
    let mut p = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = if i == j {
                (n >= 2 && !is_constant(&data[i])).then_some(1.0)
            } else {
                pearson(&data[i], &data[j])
            };
            r[i][j] = v;
            r[j][i] = v;
            let pv = if i == j { None } else { v.and_then(|v| pearson_p_value(v, n)) };
            p[i][j] = pv;
            p[j][i] = pv;
        }
    }
    Ok(CorrelationMatrix {
        variables: columns.iter().map(|c| c.0.clone()).collect(),
        n,
        r,
        p_value: p,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaResult {
    /// `None` when every value in every group is identical.
    pub f_statistic: Option<f64>,
    pub dof_between: u64,
    pub dof_within: u64,
    pub p_value: Option<f64>,
    pub ss_between: f64,
    pub ss_within: f64,
}

/// One-way ANOVA across groups.
pub fn one_way_anova(groups: &[Vec<f64>]) -> Result<AnovaResult, StatsError> {
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::Anova(format!("need at least 2 groups, got {k}")));
    }
    if let Some(i) = groups.iter().position(Vec::is_empty) {
        return Err(StatsError::Anova(format!("group {i} is empty")));
    }
    let n: usize = groups.iter().map(Vec::len).sum();
    if n <= k {
        return Err(StatsError::Anova(format!("{n} values for {k} groups leaves no within-group freedom")));
    }
    let grand = groups.iter().flatten().copied().collect::<CompensatedSum>().value() / n as f64;
    let mut ssb = CompensatedSum::new();
    let mut ssw = CompensatedSum::new();
    for g in groups {
        let m = mean(g).expect("non-empty");
        ssb.add(g.len() as f64 * (m - grand) * (m - grand));
        for x in g {
            ssw.add((x - m) * (x - m));
        }
    }
    let (ssb, mut ssw) = (ssb.value(), ssw.value());
    // rounding noise from inexact group means of constant groups
    if ssw <= f64::EPSILON * n as f64 * (ssb + ssw) || groups.iter().all(|g| is_constant(g)) {
        ssw = 0.0;
    }
    let dof_between = (k - 1) as u64;
    let dof_within = (n - k) as u64;
    let all_equal = is_constant(&groups.iter().flatten().copied().collect::<Vec<_>>());
    let (f, p) = if ssw == 0.0 {
        if all_equal {
            (None, None)
        } else {
            (Some(f64::INFINITY), Some(0.0))
        }
    } else {
        let f = (ssb / dof_between as f64) / (ssw / dof_within as f64);
        (Some(f), Some(f_sf(f, dof_between as f64, dof_within as f64)))
    };
    Ok(AnovaResult {
        f_statistic: f,
        dof_between,
        dof_within,
        p_value: p,
        ss_between: ssb,
        ss_within: ssw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        // Sxy = 3, Sxx = 2, Syy = 14/3
        let want = 3.0 / (28.0f64 / 3.0).sqrt();
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap() - want).abs() < 1e-12);
        assert!((want - 0.9820).abs() < 5e-5);
        assert_eq!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), None);
    }

    #[test]
    fn constant_variable_is_undefined_in_matrix() {
        let cols = vec![
            ("a".to_string(), vec![1.0, 2.0, 3.0, 5.0]),
            ("flat".to_string(), vec![0.1, 0.1, 0.1, 0.1]),
            ("b".to_string(), vec![2.0, 1.0, 4.0, 3.0]),
        ];
        let m = correlation_matrix(&cols, true).unwrap();
        assert_eq!(m.r[0][0], Some(1.0));
        assert!(m.r[1].iter().all(Option::is_none));
        assert!(m.r.iter().all(|row| row[1].is_none()));
        assert_eq!(m.get("a", "b"), m.get("b", "a"));
    }

    #[test]
    fn anova_examples() {
        let r = one_way_anova(&[vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(r.f_statistic, Some(0.0));
        assert_eq!(r.p_value, Some(1.0));

        let r = one_way_anova(&[vec![0.0, 0.0, 0.0], vec![10.0, 10.0, 10.0]]).unwrap();
        assert_eq!(r.f_statistic, Some(f64::INFINITY));
        assert_eq!(r.p_value, Some(0.0));

        // SSB = 4 on 1 dof, SSW = 1 on 2 dof
        let r = one_way_anova(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!((r.ss_between, r.ss_within), (4.0, 1.0));
        assert_eq!((r.dof_between, r.dof_within), (1, 2));
        assert!((r.f_statistic.unwrap() - 8.0).abs() < 1e-12);
        assert!((r.p_value.unwrap() - (1.0 - 0.8f64.sqrt())).abs() < 1e-12);

        let r = one_way_anova(&[vec![0.1; 3], vec![0.1; 4]]).unwrap();
        assert_eq!(r.f_statistic, None);
    }

    #[test]
    fn anova_rejects_bad_designs() {
        assert!(one_way_anova(&[vec![1.0, 2.0]]).is_err());
        assert!(one_way_anova(&[vec![1.0], vec![]]).is_err());
        assert!(one_way_anova(&[vec![1.0], vec![2.0]]).is_err());
    }

    proptest! {
        #[test]
        fn affine_invariance(
            xy in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..60),
            a in 0.01f64..50.0, b in -100.0f64..100.0,
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
            let tx: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            match (pearson(&x, &y), pearson(&tx, &y)) {
                (Some(r1), Some(r2)) => prop_assert!((r1 - r2).abs() < 1e-12),
                (None, None) => {}
                other => prop_assert!(false, "{other:?}"),
            }
        }

        #[test]
        fn p_value_decreases_with_abs_r(r in 0.0f64..0.99, dr in 0.0f64..0.01, n in 3usize..500) {
            let p1 = pearson_p_value(r, n).unwrap();
            let p2 = pearson_p_value(r + dr, n).unwrap();
            prop_assert!(p2 <= p1 + 1e-15);
        }
    }
}
