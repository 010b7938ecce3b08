//! ROUGE-1, ROUGE-2 and ROUGE-SU4 with clipped counts.
//!
//! Scores against several references are the mean of the per-reference
//! values, not the jackknife of the original toolkit.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RougeError {
    #[error("reference {0} has no tokens")]
    EmptyReference(usize),
    #[error("no references given")]
    NoReferences,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "ROUGE-1")]
    R1,
    #[serde(rename = "ROUGE-2")]
    R2,
    #[serde(rename = "ROUGE-SU4")]
    SU4,
}

pub const METRICS: [Metric; 3] = [Metric::R1, Metric::R2, Metric::SU4];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RougeScore {
    pub recall: f64,
    pub precision: f64,
    pub f_measure: f64,
}

impl RougeScore {
    /// A side without any unit (e.g. bigrams of a one-token text) counts as
    /// fully covered: recall is 1 for an empty reference, precision is 1 for
    /// an empty system.
    fn from_counts(overlap: usize, system: usize, reference: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 1.0 } else { a as f64 / b as f64 };
        let (recall, precision) = (ratio(overlap, reference), ratio(overlap, system));
        let f_measure = if recall + precision == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
        RougeScore { recall, precision, f_measure }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RougeConfig {
    pub stemming: bool,
    pub remove_stopwords: bool,
    /// Largest `j − i` for skip-bigram pairs `(t_i, t_j)`.
    pub max_skip: usize,
}

impl Default for RougeConfig {
    fn default() -> Self {
        RougeConfig { stemming: true, remove_stopwords: false, max_skip: 4 }
    }
}

fn tokens(s: &str, config: &RougeConfig) -> Vec<String> {
    text::tokenize(s)
        .into_iter()
        .filter(|t| !(config.remove_stopwords && t.is_stopword))
        .map(|t| if config.stemming { t.stem } else { t.surface.to_lowercase() })
        .collect()
}

type Counts = HashMap<Vec<String>, usize>;

fn units(toks: &[String], metric: Metric, max_skip: usize) -> Counts {
    let mut counts = Counts::new();
    let mut add = |u: Vec<String>| *counts.entry(u).or_default() += 1;
    match metric {
        Metric::R1 => toks.iter().for_each(|t| add(vec![t.clone()])),
        Metric::R2 => toks.windows(2).for_each(|w| add(w.to_vec())),
        Metric::SU4 => {
            for (i, t) in toks.iter().enumerate() {
                add(vec![t.clone()]);
                for u in toks.iter().skip(i + 1).take(max_skip) {
                    add(vec![t.clone(), u.clone()]);
                }
            }
        }
    }
    counts
}

fn clipped_overlap(sys: &Counts, reference: &Counts) -> usize {
    sys.iter().map(|(u, &c)| c.min(reference.get(u).copied().unwrap_or(0))).sum()
}

pub fn score(system: &str, references: &[&str], config: &RougeConfig) -> Result<BTreeMap<Metric, RougeScore>, RougeError> {
    if references.is_empty() {
        return Err(RougeError::NoReferences);
    }
    let sys_toks = tokens(system, config);
    let ref_toks: Vec<Vec<String>> = references.iter().map(|r| tokens(r, config)).collect();
    if let Some(i) = ref_toks.iter().position(Vec::is_empty) {
        return Err(RougeError::EmptyReference(i));
    }
    let mut out = BTreeMap::new();
    for metric in METRICS {
        let sys = units(&sys_toks, metric, config.max_skip);
        let sys_total: usize = sys.values().sum();
        let mut acc = RougeScore::default();
        for rt in &ref_toks {
            let r = units(rt, metric, config.max_skip);
            let s = RougeScore::from_counts(clipped_overlap(&sys, &r), sys_total, r.values().sum());
            acc.recall += s.recall;
            acc.precision += s.precision;
            acc.f_measure += s.f_measure;
        }
        let n = ref_toks.len() as f64;
        out.insert(metric, RougeScore { recall: acc.recall / n, precision: acc.precision / n, f_measure: acc.f_measure / n });
    }
    Ok(out)
}
