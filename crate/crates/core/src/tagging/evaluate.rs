use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::label::EntityLabel;
use super::span::EntitySpan;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabelScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_positives: usize,
    pub predicted: usize,
    pub gold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub per_label: BTreeMap<EntityLabel, LabelScore>,
    /// Mean F1 over labels that occur in gold or predictions.
    pub accuracy: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Exact-match scoring: a prediction counts only if an identical
/// `(record_id, start, end, label)` gold span exists.
pub fn evaluate_tagger(predicted: &[EntitySpan], gold: &[EntitySpan]) -> EvaluationReport {
    type Key<'a> = (&'a str, usize, usize, EntityLabel);
    fn key(s: &EntitySpan) -> Key<'_> {
        (s.record_id.as_str(), s.start, s.end, s.label)
    }
    let pred: HashSet<Key<'_>> = predicted.iter().map(key).collect();
    let gold: HashSet<Key<'_>> = gold.iter().map(key).collect();

    let mut per_label = BTreeMap::new();
    for label in EntityLabel::ALL {
        let p = pred.iter().filter(|k| k.3 == label).count();
        let g = gold.iter().filter(|k| k.3 == label).count();
        if p == 0 && g == 0 {
            continue;
        }
        let tp = pred.iter().filter(|k| k.3 == label && gold.contains(*k)).count();
        let precision = ratio(tp, p);
        let recall = ratio(tp, g);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        per_label.insert(
            label,
            LabelScore {
                precision,
                recall,
                f1,
                true_positives: tp,
                predicted: p,
                gold: g,
            },
        );
    }
    let accuracy = if per_label.is_empty() {
        0.0
    } else {
        per_label.values().map(|s| s.f1).sum::<f64>() / per_label.len() as f64
    };
    EvaluationReport { per_label, accuracy }
}
