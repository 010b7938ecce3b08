//! End-to-end summarization of one topic.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembler::{self, AssemblyError, SummaryDraft};
use crate::corpus::Topic;
use crate::expressiveness::{ExpressivenessError, ScModel, ScParams};
use crate::mentions::{self, MentionCluster, MentionError};
use crate::optimizer::{self, OptConfig, OptimizerError, SolveStatus};
use crate::rouge::{self, Metric, RougeConfig, RougeError, RougeScore};
use crate::salience::{self, TopicFrequencies};
use crate::treebank::{self, Phrase, TreeError};

pub const DUC_LENGTH_BUDGET: usize = 250;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("sentence {sentence_id} has no parse tree")]
    MissingParse { sentence_id: String },
    #[error("sentence {sentence_id}: {source}")]
    Tree { sentence_id: String, source: TreeError },
    #[error(transparent)]
    Mentions(#[from] MentionError),
    #[error(transparent)]
    Expressiveness(#[from] ExpressivenessError),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Rouge(#[from] RougeError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub sparse_coding: ScParams,
    /// Overrides every other source of the length limit.
    pub length_budget: Option<usize>,
    /// Without an override, use the 250-word limit instead of the topic's.
    pub duc_mode: bool,
    pub short_sentence_threshold: usize,
    pub rouge: RougeConfig,
    pub comments_enabled: bool,
    pub time_limit: Option<Duration>,
    /// Seed of the random baseline.
    pub seed: u64,
    /// Replace the exact solver by the greedy heuristic.
    pub greedy: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            sparse_coding: ScParams::default(),
            length_budget: None,
            duc_mode: false,
            short_sentence_threshold: 10,
            rouge: RougeConfig::default(),
            comments_enabled: true,
            time_limit: OptConfig::default().time_limit,
            seed: 0,
            greedy: false,
        }
    }
}

impl PipelineConfig {
    pub fn length_budget_for(&self, topic: &Topic) -> usize {
        match (self.length_budget, self.duc_mode) {
            (Some(l), _) => l,
            (None, true) => DUC_LENGTH_BUDGET,
            (None, false) => topic.length_budget_words,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceScore {
    pub sentence_id: String,
    pub expressiveness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub topic_id: String,
    pub length_budget: usize,
    pub comments_enabled: bool,
    pub expressiveness: Vec<SentenceScore>,
    pub loss_trace: Vec<f64>,
    pub sparse_coding_iterations: usize,
    pub sparse_coding_converged: bool,
    pub pool_size: usize,
    pub similar_pairs: usize,
    pub num_vars: usize,
    pub num_constraints: usize,
    pub objective_value: f64,
    pub status: SolveStatus,
    pub nodes_explored: usize,
    pub selected_phrases: Vec<String>,
    pub clusters: Vec<ClusterForms>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterForms {
    pub id: String,
    pub full_form: String,
    pub short_form: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub summary: SummaryDraft,
    pub trace: Trace,
    pub rouge: Option<BTreeMap<Metric, RougeScore>>,
    /// Program in LP text format, when requested.
    #[serde(skip)]
    pub lp_dump: Option<String>,
}

/// Sentence-level expressiveness, in topic order of news sentences.
pub fn sentence_expressiveness(topic: &Topic, params: ScParams, comments: bool) -> Result<(Vec<SentenceScore>, crate::expressiveness::ExpressivenessResult), PipelineError> {
    let result = ScModel::from_topic(topic, params, comments)?.solve()?;
    let scores = topic
        .news_sentences()
        .zip(&result.scores)
        .map(|(s, &a)| SentenceScore { sentence_id: s.id.clone(), expressiveness: a })
        .collect();
    Ok((scores, result))
}

/// NP and VP candidates of every news sentence. Sentences whose tree has no
/// clause node contribute nothing.
pub fn topic_phrases(topic: &Topic) -> Result<Vec<Vec<Phrase>>, PipelineError> {
    topic
        .news_sentences()
        .map(|s| {
            let tree = s.parse.as_ref().ok_or_else(|| PipelineError::MissingParse { sentence_id: s.id.clone() })?;
            match treebank::extract_phrases(tree, &s.id) {
                Ok(p) => Ok(p),
                Err(TreeError::NoSentenceNode) => Ok(Vec::new()),
                Err(source) => Err(PipelineError::Tree { sentence_id: s.id.clone(), source }),
            }
        })
        .collect()
}

pub fn summarize(topic: &Topic, config: &PipelineConfig, dump_lp: bool) -> Result<PipelineOutput, PipelineError> {
    let budget = config.length_budget_for(topic);
    let clusters: Vec<MentionCluster> = mentions::load_or_derive_clusters(topic)?;
    let (scores, sc) = sentence_expressiveness(topic, config.sparse_coding, config.comments_enabled)?;
    let phrases = topic_phrases(topic)?;
    let tf = TopicFrequencies::from_topic(topic);
    let pool = salience::candidate_pool(
        sc.scores.iter().copied().zip(phrases.iter().map(Vec::as_slice)),
        &topic.dictionary,
        &tf,
    );
    let sim = salience::build_similarity(&pool);

    let mut trace = Trace {
        topic_id: topic.id.clone(),
        length_budget: budget,
        comments_enabled: config.comments_enabled,
        expressiveness: scores,
        loss_trace: sc.loss_trace.clone(),
        sparse_coding_iterations: sc.iterations_run,
        sparse_coding_converged: sc.converged,
        pool_size: pool.len(),
        similar_pairs: sim.len(),
        num_vars: 0,
        num_constraints: 0,
        objective_value: 0.0,
        status: SolveStatus::Optimal,
        nodes_explored: 0,
        selected_phrases: Vec::new(),
        clusters: clusters
            .iter()
            .map(|c| ClusterForms { id: c.id.clone(), full_form: c.full_form.surface.clone(), short_form: c.short_form.surface.clone() })
            .collect(),
    };

    let opt = OptConfig { length_budget: budget, short_sentence_threshold: config.short_sentence_threshold, time_limit: config.time_limit };
    let (summary, lp_dump) = match optimizer::build_model(&pool, &sim, &clusters, topic, &opt) {
        Err(OptimizerError::EmptyPool) => (SummaryDraft::default(), None),
        Err(e) => return Err(e.into()),
        Ok(problem) => {
            let solution = if config.greedy {
                optimizer::solve_greedy(&problem.model)
            } else {
                optimizer::solve_ilp(&problem.model, config.time_limit)?
            };
            trace.num_vars = problem.model.num_vars();
            trace.num_constraints = problem.model.constraints.len();
            trace.objective_value = solution.objective_value;
            trace.status = solution.status;
            trace.nodes_explored = solution.nodes_explored;
            trace.selected_phrases =
                solution.selected_phrases(&problem.model).into_iter().map(|i| pool[i].phrase.id.clone()).collect();
            let draft = assembler::assemble(&problem, &solution, &pool, &clusters, topic)?;
            (draft, dump_lp.then(|| optimizer::lp_format::to_lp_string(&problem.model)))
        }
    };

    let rouge = score_against_references(&summary.text(), topic, &config.rouge)?;
    Ok(PipelineOutput { summary, trace, rouge, lp_dump })
}

/// ROUGE of `text` against the topic's gold summaries, if it has any.
pub fn score_against_references(
    text: &str,
    topic: &Topic,
    config: &RougeConfig,
) -> Result<Option<BTreeMap<Metric, RougeScore>>, PipelineError> {
    if topic.references.is_empty() {
        return Ok(None);
    }
    let refs: Vec<&str> = topic.references.iter().map(|r| r.text.as_str()).collect();
    Ok(Some(rouge::score(text, &refs, config)?))
}
