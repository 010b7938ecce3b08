//! Joint phrase selection and entity rewriting as a 0-1 integer program,
//! solved exactly by branch-and-bound over an LP relaxation.
//!
//! The objective rewards the salience of selected phrases and penalizes
//! selecting similar phrases together:
//!
//! ```text
//! max Σ α_i S_i − Σ_{i<j} α_ij (S_i + S_j) R_ij
//! ```

mod bnb;
pub mod check;
mod greedy;
pub mod lp_format;
pub mod rewrite;
mod simplex;

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Topic;
use crate::mentions::MentionCluster;
use crate::salience::{SaliencedPhrase, SimilarityMatrix};
use crate::text;
use crate::treebank::PhraseKind;

pub use bnb::solve_ilp;
pub use greedy::{complete_assignment, solve_greedy};
pub use rewrite::{Form, MentionSlot, PhrasePlan};

#[derive(Debug, Error, PartialEq)]
pub enum OptimizerError {
    #[error("no candidate phrases")]
    EmptyPool,
    #[error("sentence {0} of a candidate phrase is not in the topic")]
    UnknownSentence(String),
    #[error("simplex did not terminate within {0} iterations")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    /// Summary length limit `L` in words.
    pub length_budget: usize,
    /// VPs of sentences shorter than this are never selected.
    pub short_sentence_threshold: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig { length_budget: 100, short_sentence_threshold: 10, time_limit: Some(Duration::from_secs(120)) }
    }
}

/// Why a phrase variable is fixed to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    ShortSentence,
    Pronoun,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhraseVar {
    pub sentence: usize,
    pub kind: PhraseKind,
    /// Words of the phrase with its first entity mentions as written and
    /// later mentions already in short form.
    pub words: usize,
    pub salience: f64,
    pub excluded: Option<Exclusion>,
}

/// The first mention of a cluster inside a phrase, with the word-count
/// change of rendering it in full or short form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteSlot {
    pub phrase: usize,
    pub cluster: usize,
    pub full_delta: i64,
    pub short_delta: i64,
}

/// The selection problem stripped of text: everything the integer program
/// is built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub phrases: Vec<PhraseVar>,
    pub num_sentences: usize,
    /// `(ancestor, descendant)` phrase pairs.
    pub nested: Vec<(usize, usize)>,
    /// `(i, j, R_ij)` with `i < j`.
    pub similar: Vec<(usize, usize, f64)>,
    pub slots: Vec<RewriteSlot>,
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Alpha(usize),
    AlphaPair(usize, usize),
    Beta(usize),
    GammaFull(usize),
    GammaShort(usize),
}

impl VarKind {
    pub fn name(&self) -> String {
        match *self {
            VarKind::Alpha(i) => format!("a{i}"),
            VarKind::AlphaPair(i, j) => format!("p{i}_{j}"),
            VarKind::Beta(k) => format!("b{k}"),
            VarKind::GammaFull(s) => format!("gf{s}"),
            VarKind::GammaShort(s) => format!("gs{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Compression,
    Rewriting,
    Nesting,
    Cooccurrence,
    ShortSentence,
    Pronoun,
    Length,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub family: Family,
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(j, a)| a * x[j]).sum()
    }

    pub fn holds(&self, x: &[f64], tol: f64) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs + tol,
            Sense::Ge => lhs >= self.rhs - tol,
            Sense::Eq => (lhs - self.rhs).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IlpModel {
    pub instance: Instance,
    pub vars: Vec<VarKind>,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub length_budget: usize,
}

impl IlpModel {
    pub fn from_instance(inst: &Instance) -> IlpModel {
        let mut vars = Vec::new();
        let mut objective = Vec::new();
        let mut add = |kind: VarKind, coef: f64| {
            vars.push(kind);
            objective.push(coef);
            vars.len() - 1
        };
        let alpha: Vec<usize> = inst.phrases.iter().enumerate().map(|(i, p)| add(VarKind::Alpha(i), p.salience)).collect();
        let pair: Vec<usize> = inst
            .similar
            .iter()
            .map(|&(i, j, r)| add(VarKind::AlphaPair(i, j), -(inst.phrases[i].salience + inst.phrases[j].salience) * r))
            .collect();
        let beta: Vec<usize> = (0..inst.num_sentences).map(|k| add(VarKind::Beta(k), 0.0)).collect();
        let gamma: Vec<(usize, usize)> = (0..inst.slots.len())
            .map(|s| (add(VarKind::GammaFull(s), 0.0), add(VarKind::GammaShort(s), 0.0)))
            .collect();

        let mut cons = Vec::new();
        let mut push = |family, terms: Vec<(usize, f64)>, sense, rhs| cons.push(Constraint { family, terms, sense, rhs });

        for (k, &b) in beta.iter().enumerate() {
            for kind in [PhraseKind::NP, PhraseKind::VP] {
                let members: Vec<usize> =
                    (0..inst.phrases.len()).filter(|&i| inst.phrases[i].sentence == k && inst.phrases[i].kind == kind).collect();
                for &i in &members {
                    push(Family::Compression, vec![(alpha[i], 1.0), (b, -1.0)], Sense::Le, 0.0);
                }
                let mut sum: Vec<(usize, f64)> = members.iter().map(|&i| (alpha[i], 1.0)).collect();
                sum.push((b, -1.0));
                push(Family::Compression, sum, Sense::Ge, 0.0);
            }
        }

        let mut by_cluster: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (s, slot) in inst.slots.iter().enumerate() {
            by_cluster.entry(slot.cluster).or_default().push(s);
        }
        for slots in by_cluster.values() {
            for &s in slots {
                let (f, sh) = gamma[s];
                push(Family::Rewriting, vec![(f, 1.0), (sh, 1.0), (alpha[inst.slots[s].phrase], -1.0)], Sense::Eq, 0.0);
            }
            let fulls: Vec<(usize, f64)> = slots.iter().map(|&s| (gamma[s].0, 1.0)).collect();
            push(Family::Rewriting, fulls.clone(), Sense::Le, 1.0);
            for &s in slots {
                let mut terms = fulls.clone();
                terms.push((alpha[inst.slots[s].phrase], -1.0));
                push(Family::Rewriting, terms, Sense::Ge, 0.0);
            }
        }

        for &(k, j) in &inst.nested {
            push(Family::Nesting, vec![(alpha[k], 1.0), (alpha[j], 1.0)], Sense::Le, 1.0);
        }

        for (p, &(i, j, _)) in inst.similar.iter().enumerate() {
            push(Family::Cooccurrence, vec![(pair[p], 1.0), (alpha[i], -1.0)], Sense::Le, 0.0);
            push(Family::Cooccurrence, vec![(pair[p], 1.0), (alpha[j], -1.0)], Sense::Le, 0.0);
            push(Family::Cooccurrence, vec![(alpha[i], 1.0), (alpha[j], 1.0), (pair[p], -1.0)], Sense::Le, 1.0);
        }

        for (i, p) in inst.phrases.iter().enumerate() {
            match p.excluded {
                Some(Exclusion::ShortSentence) => push(Family::ShortSentence, vec![(alpha[i], 1.0)], Sense::Eq, 0.0),
                Some(Exclusion::Pronoun) => push(Family::Pronoun, vec![(alpha[i], 1.0)], Sense::Eq, 0.0),
                None => {}
            }
        }

        let mut length: Vec<(usize, f64)> = inst.phrases.iter().enumerate().map(|(i, p)| (alpha[i], p.words as f64)).collect();
        for (s, slot) in inst.slots.iter().enumerate() {
            length.push((gamma[s].0, slot.full_delta as f64));
            length.push((gamma[s].1, slot.short_delta as f64));
        }
        push(Family::Length, length, Sense::Le, inst.budget as f64);

        IlpModel { instance: inst.clone(), vars, objective, constraints: cons, length_budget: inst.budget }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn objective_value(&self, x: &[bool]) -> f64 {
        self.objective.iter().zip(x).filter(|(_, &v)| v).map(|(c, _)| c).sum()
    }

    pub fn var_index(&self, kind: VarKind) -> Option<usize> {
        self.vars.iter().position(|&v| v == kind)
    }
}

/// Text-level inputs to the program: pool phrases with their rewrite plans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionProblem {
    pub model: IlpModel,
    pub plans: Vec<PhrasePlan>,
    /// Sentence id of each sentence index.
    pub sentences: Vec<String>,
}

/// Builds the program over a pruned candidate pool.
pub fn build_model(
    pool: &[SaliencedPhrase],
    sim: &SimilarityMatrix,
    clusters: &[MentionCluster],
    topic: &Topic,
    config: &OptConfig,
) -> Result<SelectionProblem, OptimizerError> {
    if pool.is_empty() {
        return Err(OptimizerError::EmptyPool);
    }
    let mut sentences: Vec<String> = Vec::new();
    let mut phrases = Vec::new();
    let mut plans = Vec::new();
    let mut slots = Vec::new();
    for (i, sp) in pool.iter().enumerate() {
        let p = &sp.phrase;
        let sentence = match sentences.iter().position(|s| *s == p.sentence_id) {
            Some(k) => k,
            None => {
                sentences.push(p.sentence_id.clone());
                sentences.len() - 1
            }
        };
        let sentence_words = topic
            .sentence(&p.sentence_id)
            .ok_or_else(|| OptimizerError::UnknownSentence(p.sentence_id.clone()))?
            .word_count();
        let excluded = match p.kind {
            PhraseKind::VP if sentence_words < config.short_sentence_threshold => Some(Exclusion::ShortSentence),
            PhraseKind::NP if text::is_pronoun_phrase(&p.text()) => Some(Exclusion::Pronoun),
            _ => None,
        };
        let plan = rewrite::plan_phrase(p, clusters);
        let (words, deltas) = rewrite::length_terms(p, &plan, clusters);
        for (slot, (full_delta, short_delta)) in plan.slots.iter().zip(deltas) {
            slots.push(RewriteSlot { phrase: i, cluster: slot.cluster, full_delta, short_delta });
        }
        plans.push(plan);
        phrases.push(PhraseVar { sentence, kind: p.kind, words, salience: sp.salience, excluded });
    }
    let mut nested = Vec::new();
    for (i, p) in pool.iter().enumerate() {
        for (j, q) in pool.iter().enumerate() {
            if i != j && q.phrase.sentence_id == p.phrase.sentence_id && q.phrase.ancestors.contains(&p.phrase.id) {
                nested.push((i, j));
            }
        }
    }
    let similar = sim.pairs.iter().map(|(&(i, j), &r)| (i, j, r)).collect();
    let instance =
        Instance { phrases, num_sentences: sentences.len(), nested, similar, slots, budget: config.length_budget };
    Ok(SelectionProblem { model: IlpModel::from_instance(&instance), plans, sentences })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    FeasibleWithGap(f64),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IlpSolution {
    pub assignment: Vec<bool>,
    pub objective_value: f64,
    pub status: SolveStatus,
    pub nodes_explored: usize,
}

impl IlpSolution {
    pub fn selected_phrases(&self, model: &IlpModel) -> Vec<usize> {
        model
            .vars
            .iter()
            .zip(&self.assignment)
            .filter_map(|(v, &on)| match v {
                VarKind::Alpha(i) if on => Some(*i),
                _ => None,
            })
            .collect()
    }

    /// Form of each rewrite slot's first mention; `None` for slots of
    /// unselected phrases.
    pub fn slot_forms(&self, model: &IlpModel) -> Vec<Option<Form>> {
        let mut forms = vec![None; model.instance.slots.len()];
        for (v, &on) in model.vars.iter().zip(&self.assignment) {
            match *v {
                VarKind::GammaFull(s) if on => forms[s] = Some(Form::Full),
                VarKind::GammaShort(s) if on => forms[s] = Some(Form::Short),
                _ => {}
            }
        }
        forms
    }

    /// Words of the selection after rewriting, as accounted in the length row.
    pub fn accounted_words(&self, model: &IlpModel) -> i64 {
        let len = model.constraints.iter().find(|c| c.family == Family::Length).expect("length row");
        let x: Vec<f64> = self.assignment.iter().map(|&b| b as u8 as f64).collect();
        len.lhs(&x).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phrase(sentence: usize, kind: PhraseKind, words: usize, salience: f64) -> PhraseVar {
        PhraseVar { sentence, kind, words, salience, excluded: None }
    }

    #[test]
    fn objective_matches_definition() {
        let inst = Instance {
            phrases: vec![phrase(0, PhraseKind::NP, 3, 0.5), phrase(1, PhraseKind::NP, 2, 0.25)],
            num_sentences: 2,
            nested: vec![],
            similar: vec![(0, 1, 0.5)],
            slots: vec![],
            budget: 10,
        };
        let m = IlpModel::from_instance(&inst);
        assert_eq!(m.objective, vec![0.5, 0.25, -0.375, 0.0, 0.0]);
        assert_eq!(m.objective_value(&[true, true, true, true, true]), 0.375);
    }

    #[test]
    fn constraint_families_are_present() {
        let mut vp = phrase(0, PhraseKind::VP, 4, 0.2);
        vp.excluded = Some(Exclusion::ShortSentence);
        let inst = Instance {
            phrases: vec![phrase(0, PhraseKind::NP, 2, 0.1), vp, phrase(1, PhraseKind::NP, 1, 0.3), phrase(1, PhraseKind::NP, 1, 0.3)],
            num_sentences: 2,
            nested: vec![(2, 3)],
            similar: vec![(0, 2, 0.2)],
            slots: vec![RewriteSlot { phrase: 0, cluster: 0, full_delta: 2, short_delta: 0 }],
            budget: 5,
        };
        let m = IlpModel::from_instance(&inst);
        for fam in [Family::Compression, Family::Rewriting, Family::Nesting, Family::Cooccurrence, Family::ShortSentence, Family::Length] {
            assert!(m.constraints.iter().any(|c| c.family == fam), "{fam:?}");
        }
        let zero = vec![0.0; m.num_vars()];
        assert!(m.constraints.iter().all(|c| c.holds(&zero, 0.0)));
    }
}
