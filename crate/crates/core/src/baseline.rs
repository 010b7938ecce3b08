//! Extractive reference systems: random and lead.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Sentence, Topic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    Random,
    Lead,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineSummary {
    pub sentence_ids: Vec<String>,
    pub sentences: Vec<String>,
    pub total_words: usize,
}

impl BaselineSummary {
    pub fn text(&self) -> String {
        self.sentences.iter().map(|s| format!("{s}\n")).collect()
    }
}

/// Takes sentences in the given order until the next one would exceed `budget`.
fn fill<'a>(order: impl IntoIterator<Item = &'a Sentence>, budget: usize) -> BaselineSummary {
    let mut out = BaselineSummary { sentence_ids: Vec::new(), sentences: Vec::new(), total_words: 0 };
    for s in order {
        let w = s.word_count();
        if out.total_words + w > budget {
            break;
        }
        out.total_words += w;
        out.sentence_ids.push(s.id.clone());
        out.sentences.push(s.raw_text.clone());
    }
    out
}

pub fn random(topic: &Topic, budget: usize, seed: u64) -> BaselineSummary {
    let mut sentences: Vec<&Sentence> = topic.news_sentences().collect();
    sentences.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    fill(sentences, budget)
}

/// Leading sentences of the documents in chronological order.
pub fn lead(topic: &Topic, budget: usize) -> BaselineSummary {
    let mut docs: Vec<_> = topic.documents.iter().enumerate().collect();
    docs.sort_by_key(|(i, d)| (d.timestamp, *i));
    fill(docs.into_iter().flat_map(|(_, d)| d.sentences()), budget)
}

pub fn run(kind: BaselineKind, topic: &Topic, budget: usize, seed: u64) -> BaselineSummary {
    match kind {
        BaselineKind::Random => random(topic, budget, seed),
        BaselineKind::Lead => lead(topic, budget),
    }
}
